#include "sodkit/io.hpp"

#include "sodkit/errors.hpp"

#include "json.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace sodkit::io {

namespace {

using nlohmann::json;

double number_field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw IoError(where + "." + key + ": missing");
    }
    if (!it->is_number()) {
        throw IoError(where + "." + key + ": expected a number");
    }
    return it->get<double>();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& where) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double x = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
        throw IoError(where + ": '" + std::string(text) + "' is not a number");
    }
    return x;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string() + ": cannot open for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(path.string() + ": cannot open for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw IoError(path.string() + ": write failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError(path.string() + ": cannot move the temporary file into place");
    }
}

std::string signal_to_json(const Signal& f) {
    json segs = json::array();
    for (const auto& s : f.segments()) {
        segs.push_back({{"t", s.t}, {"c0", s.c0}, {"c1", s.c1}, {"c2", s.c2}});
    }
    json doc = {{"T", f.horizon()}, {"segments", segs}};
    return doc.dump(2) + "\n";
}

Signal signal_from_json(std::string_view text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(source + ": malformed JSON (" + e.what() + ")");
    }
    if (!doc.is_object()) {
        throw IoError(source + ": expected a JSON object");
    }
    const double horizon = number_field(doc, "T", source);
    const auto it = doc.find("segments");
    if (it == doc.end() || !it->is_array()) {
        throw IoError(source + ".segments: expected an array");
    }
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < it->size(); ++i) {
        const json& s = (*it)[i];
        const std::string where = source + ".segments[" + std::to_string(i) + "]";
        if (!s.is_object()) {
            throw IoError(where + ": expected an object");
        }
        segs.push_back({number_field(s, "t", where), number_field(s, "c0", where), number_field(s, "c1", where),
                        number_field(s, "c2", where)});
    }
    return Signal(horizon, std::move(segs));
}

Signal read_signal(const std::filesystem::path& path) {
    return signal_from_json(read_file(path), path.string());
}

void write_signal(const std::filesystem::path& path, const Signal& f) {
    write_atomic(path, signal_to_json(f));
}

std::string events_to_csv(const EventSequence& eta) {
    std::string out = "t,v\n";
    for (std::size_t k = 0; k < eta.size(); ++k) {
        out += format_double(eta.times()[k]);
        out += ',';
        out += format_double(eta.values()[k]);
        out += '\n';
    }
    return out;
}

EventSequence events_from_csv(std::string_view text, double horizon, const std::string& source) {
    std::vector<double> t;
    std::vector<double> v;
    std::size_t row = 0;
    bool header = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++row;
        if (line.empty()) {
            continue;
        }
        if (!header) {
            if (line != "t,v") {
                throw IoError(source + ": row 1: expected header 't,v'");
            }
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw IoError(source + ": row " + std::to_string(row) + ": expected two fields 't,v'");
        }
        const std::string where = source + ": row " + std::to_string(row);
        t.push_back(parse_double(line.substr(0, comma), where + " field t"));
        v.push_back(parse_double(line.substr(comma + 1), where + " field v"));
    }
    if (!header) {
        throw IoError(source + ": missing header 't,v'");
    }
    try {
        return EventSequence(horizon, std::move(t), std::move(v));
    } catch (const DomainError& e) {
        throw IoError(source + ": " + e.what());
    }
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    auto p = csv;
    p += ".json";
    return p;
}

EventSequence read_events(const std::filesystem::path& path, std::optional<double> horizon) {
    if (!horizon) {
        const auto side = sidecar_path(path);
        if (!std::filesystem::exists(side)) {
            throw IoError(path.string() + ": horizon unknown (pass --horizon or provide " + side.string() + ")");
        }
        json doc;
        try {
            doc = json::parse(read_file(side));
        } catch (const json::parse_error& e) {
            throw IoError(side.string() + ": malformed JSON (" + e.what() + ")");
        }
        if (!doc.is_object()) {
            throw IoError(side.string() + ": expected a JSON object");
        }
        horizon = number_field(doc, "T", side.string());
    }
    return events_from_csv(read_file(path), *horizon, path.string());
}

void write_events(const std::filesystem::path& path, const EventSequence& eta) {
    write_atomic(path, events_to_csv(eta));
    write_atomic(sidecar_path(path), json({{"T", eta.horizon()}}).dump() + "\n");
}

} // namespace sodkit::io
