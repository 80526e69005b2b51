#include "align360/trace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "align360/errors.hpp"

namespace align360 {

Trace preprocess(const RawTrace& raw) {
    if (raw.records.size() < 2) {
        throw NoDataError("trace '" + raw.participant_id + "': fewer than 2 records");
    }
    Trace out;
    out.participant_id = raw.participant_id;
    out.video_id = raw.video_id;
    out.edit_id = raw.edit_id;
    out.samples.reserve(raw.records.size());

    double prev_t = -1.0;
    for (const RawRecord& rec : raw.records) {
        if (rec.t < 0.0) throw DomainError("negative timestamp " + std::to_string(rec.t));
        if (!out.samples.empty() && rec.t < prev_t) {
            throw DomainError("timestamps decrease at t=" + std::to_string(rec.t));
        }
        const TimedSample s =
            centered_to_cartesian(euler_to_centered(screen_to_euler(rec.p)), rec.t);
        if (!out.samples.empty() && rec.t == prev_t) {
            out.samples.back() = s;  // duplicate timestamp: last record wins
        } else {
            out.samples.push_back(s);
        }
        prev_t = rec.t;
    }
    if (out.samples.size() < 2) {
        throw NoDataError("trace '" + raw.participant_id +
                          "': fewer than 2 samples after deduplication");
    }
    return out;
}

std::size_t near(const Trace& trace, double t_query) {
    if (trace.empty()) throw NoDataError("near() on empty trace");
    const auto& s = trace.samples;
    auto it = std::lower_bound(s.begin(), s.end(), t_query,
                               [](const TimedSample& a, double t) { return a.t < t; });
    if (it == s.begin()) return 0;
    if (it == s.end()) return s.size() - 1;
    const std::size_t hi = static_cast<std::size_t>(it - s.begin());
    const std::size_t lo = hi - 1;
    // ties break toward the smaller index
    return (t_query - s[lo].t) < (s[hi].t - t_query) ? lo
         : (t_query - s[lo].t) > (s[hi].t - t_query) ? hi
                                                     : lo;
}

std::pair<std::size_t, std::size_t> window_indices(const Trace& trace, double t0,
                                                   double window) {
    const auto& s = trace.samples;
    auto first = std::lower_bound(s.begin(), s.end(), t0,
                                  [](const TimedSample& a, double t) { return a.t < t; });
    auto last = std::upper_bound(first, s.end(), t0 + window,
                                 [](double t, const TimedSample& a) { return t < a.t; });
    return {static_cast<std::size_t>(first - s.begin()),
            static_cast<std::size_t>(last - s.begin())};
}

TimedSample mean_sample(const Trace& trace, double t0, double delta_t) {
    const auto [first, last] = window_indices(trace, t0, delta_t);
    if (first == last) {
        throw NoDataError("no samples in window [" + std::to_string(t0) + ", " +
                          std::to_string(t0 + delta_t) + "]");
    }
    double sx = 0.0, sy = 0.0, sz = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        sx += trace.samples[i].x;
        sy += trace.samples[i].y;
        sz += trace.samples[i].z;
    }
    const double n = static_cast<double>(last - first);
    sx /= n;
    sy /= n;
    sz /= n;
    const double norm = std::sqrt(sx * sx + sy * sy + sz * sz);
    if (norm < 1e-12) {
        throw DomainError("window mean degenerates to the zero vector");
    }
    return TimedSample{sx / norm, sy / norm, sz / norm, t0};
}

std::vector<double> instantaneous_speeds_deg(const Trace& trace) {
    std::vector<double> speeds;
    if (trace.size() < 2) return speeds;
    speeds.reserve(trace.size() - 1);
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
        const double dt = trace.samples[i + 1].t - trace.samples[i].t;
        if (dt <= 0.0) continue;
        speeds.push_back(rad2deg(orthodromic_distance(trace.samples[i], trace.samples[i + 1])) / dt);
    }
    return speeds;
}

SpeedFilterResult speed_filter(const Trace& trace, const SamplingConfig& cfg) {
    SpeedFilterResult result;
    result.trace.participant_id = trace.participant_id;
    result.trace.video_id = trace.video_id;
    result.trace.edit_id = trace.edit_id;

    std::vector<bool> drop(trace.size(), false);
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
        const double dt = trace.samples[i + 1].t - trace.samples[i].t;
        if (dt <= 0.0) continue;
        const double speed =
            rad2deg(orthodromic_distance(trace.samples[i], trace.samples[i + 1])) / dt;
        if (speed > cfg.speed_cap) drop[i] = true;
    }
    result.trace.samples.reserve(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (drop[i]) {
            ++result.removed;
        } else {
            result.trace.samples.push_back(trace.samples[i]);
        }
    }
    return result;
}

// --- CSV -------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& field, const std::filesystem::path& path, int line_no) {
    const std::string f = trim(field);
    double value = 0.0;
    const char* begin = f.data();
    const char* end = begin + f.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw IoError(path.string() + ":" + std::to_string(line_no) +
                      ": cannot parse number '" + f + "'");
    }
    return value;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

// "participant__video__edit" stem convention; partial stems fill what they can
void ids_from_stem(const std::string& stem, RawTrace& raw) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = stem.find("__", pos);
        if (next == std::string::npos) {
            parts.push_back(stem.substr(pos));
            break;
        }
        parts.push_back(stem.substr(pos, next - pos));
        pos = next + 2;
    }
    if (!parts.empty()) raw.participant_id = parts[0];
    if (parts.size() > 1) raw.video_id = parts[1];
    if (parts.size() > 2) raw.edit_id = parts[2];
}

}  // namespace

RawTrace read_raw_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file " + path.string());

    RawTrace raw;
    ids_from_stem(path.stem().string(), raw);

    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            // optional identifier comments: "# participant=p001"
            const std::size_t eq = t.find('=');
            if (eq != std::string::npos) {
                const std::string key = trim(t.substr(1, eq - 1));
                const std::string value = trim(t.substr(eq + 1));
                if (key == "participant") raw.participant_id = value;
                else if (key == "video") raw.video_id = value;
                else if (key == "edit") raw.edit_id = value;
            }
            continue;
        }
        if (!header_seen) {
            std::string h = t;
            h.erase(std::remove_if(h.begin(), h.end(),
                                   [](unsigned char c) { return std::isspace(c); }),
                    h.end());
            if (h != "t,x,y") {
                throw IoError(path.string() + ": expected header 't,x,y', got '" + t + "'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv(t);
        if (fields.size() != 3) {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": expected 3 fields, got " + std::to_string(fields.size()));
        }
        RawRecord rec;
        rec.t = parse_double(fields[0], path, line_no);
        rec.p.x = parse_double(fields[1], path, line_no);
        rec.p.y = parse_double(fields[2], path, line_no);
        raw.records.push_back(rec);
    }
    if (!header_seen) throw IoError(path.string() + ": missing 't,x,y' header");
    return raw;
}

void write_raw_trace_csv(const std::filesystem::path& path, const RawTrace& raw) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write trace file " + path.string());
    out << "# participant=" << raw.participant_id << "\n";
    out << "# video=" << raw.video_id << "\n";
    out << "# edit=" << raw.edit_id << "\n";
    out << "t,x,y\n";
    char buf[128];
    for (const RawRecord& rec : raw.records) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g\n", rec.t, rec.p.x, rec.p.y);
        out << buf;
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_processed_trace_csv(const std::filesystem::path& path, const Trace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write trace file " + path.string());
    out << "# participant=" << trace.participant_id << "\n";
    out << "# video=" << trace.video_id << "\n";
    out << "# edit=" << trace.edit_id << "\n";
    out << "t,X,Y,Z\n";
    char buf[160];
    for (const TimedSample& s : trace.samples) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g\n", s.t, s.x, s.y, s.z);
        out << buf;
    }
    if (!out) throw IoError("write failed: " + path.string());
}

RawTrace to_raw(const Trace& trace) {
    RawTrace raw;
    raw.participant_id = trace.participant_id;
    raw.video_id = trace.video_id;
    raw.edit_id = trace.edit_id;
    raw.records.reserve(trace.size());
    for (const TimedSample& s : trace.samples) {
        const ScreenPoint p = euler_to_screen(centered_to_euler(cartesian_to_centered(s)));
        raw.records.push_back(RawRecord{s.t, p});
    }
    return raw;
}

}  // namespace align360
