#pragma once

#include "sodkit/events.hpp"
#include "sodkit/signal.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sodkit::io {

/// Unreadable file or malformed content. The message names the offending
/// field or row.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view text, const std::string& where);

std::string read_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// {"T": number, "segments": [{"t", "c0", "c1", "c2"}, ...]}
std::string signal_to_json(const Signal& f);
Signal signal_from_json(std::string_view text, const std::string& source);
Signal read_signal(const std::filesystem::path& path);
void write_signal(const std::filesystem::path& path, const Signal& f);

/// Header `t,v`, one event per row.
std::string events_to_csv(const EventSequence& eta);
EventSequence events_from_csv(std::string_view text, double horizon, const std::string& source);

/// Sidecar holding the horizon of an events CSV: `<csv>.json` = {"T": ...}.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// The horizon comes from `horizon` when given, else from the sidecar.
EventSequence read_events(const std::filesystem::path& path, std::optional<double> horizon);
/// Writes the CSV and its sidecar.
void write_events(const std::filesystem::path& path, const EventSequence& eta);

} // namespace sodkit::io
