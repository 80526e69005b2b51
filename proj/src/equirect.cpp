#include "align360/equirect.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "align360/edit_model.hpp"
#include "align360/errors.hpp"

namespace align360 {

EquirectFrame::EquirectFrame(int w, int h) : width(w), height(h) {
    if (w <= 0 || h <= 0 || w != 2 * h) {
        throw DomainError("equirectangular frame must be 2:1, got " + std::to_string(w) + "x" +
                          std::to_string(h));
    }
    pixels.assign(std::size_t(3) * w * h, 0);
}

EquirectFrame rotate_yaw(const EquirectFrame& frame, double theta_deg) {
    const int w = frame.width;
    // round half away from zero, then reduce mod width
    long long shift = std::llround(theta_deg / 360.0 * w);
    shift %= w;
    if (shift < 0) shift += w;
    if (shift == 0) return frame;

    EquirectFrame out(frame.width, frame.height);
    const std::size_t row_bytes = std::size_t(3) * w;
    const std::size_t tail = std::size_t(3) * (w - shift);
    for (int y = 0; y < frame.height; ++y) {
        const std::uint8_t* src = frame.pixels.data() + row_bytes * y;
        std::uint8_t* dst = out.pixels.data() + row_bytes * y;
        // out column x = in column (x + shift) mod w
        std::copy(src + 3 * shift, src + row_bytes, dst);
        std::copy(src, src + 3 * shift, dst + tail);
    }
    return out;
}

EquirectFrame apply_fade(const EquirectFrame& frame, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("fade alpha " + std::to_string(alpha) + " outside [0,1]");
    }
    if (alpha == 1.0) return frame;
    EquirectFrame out = frame;
    for (std::uint8_t& v : out.pixels) {
        v = static_cast<std::uint8_t>(std::floor(v * alpha));
    }
    return out;
}

FrameSequence render_edit(const FrameSequence& seq, const EditTimeline& timeline) {
    if (seq.fps <= 0.0) throw DomainError("fps must be positive");
    if (seq.frames.empty() ||
        seq.frame_time(seq.frames.size() - 1) < timeline.edit_end()) {
        throw CoverageError("sequence ends at " +
                            std::to_string(seq.frames.empty()
                                               ? 0.0
                                               : seq.frame_time(seq.frames.size() - 1)) +
                            " s but the edit ends at " + std::to_string(timeline.edit_end()) +
                            " s");
    }
    FrameSequence out;
    out.fps = seq.fps;
    out.frames.reserve(seq.frames.size());
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const double t = seq.frame_time(i);
        out.frames.push_back(
            apply_fade(rotate_yaw(seq.frames[i], timeline.yaw_offset_deg(t)),
                       timeline.fade_alpha(t)));
    }
    return out;
}

// --- SI / TI -----------------------------------------------------------------

namespace {

std::vector<double> luma_plane(const EquirectFrame& f) {
    std::vector<double> luma(std::size_t(f.width) * f.height);
    const std::uint8_t* p = f.pixels.data();
    for (double& v : luma) {
        v = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
        p += 3;
    }
    return luma;
}

double stddev(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / n);
}

// Sobel magnitude with horizontal wrap and vertical replication.
std::vector<double> sobel_magnitude(const std::vector<double>& luma, int w, int h) {
    std::vector<double> mag(luma.size());
    auto at = [&](int x, int y) {
        x = (x % w + w) % w;           // longitude wraps
        y = std::clamp(y, 0, h - 1);   // latitude replicates
        return luma[std::size_t(y) * w + x];
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = -at(x - 1, y - 1) + at(x + 1, y - 1)
                              - 2 * at(x - 1, y) + 2 * at(x + 1, y)
                              - at(x - 1, y + 1) + at(x + 1, y + 1);
            const double gy = -at(x - 1, y - 1) - 2 * at(x, y - 1) - at(x + 1, y - 1)
                              + at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1);
            mag[std::size_t(y) * w + x] = std::sqrt(gx * gx + gy * gy);
        }
    }
    return mag;
}

}  // namespace

SiTi compute_si_ti(const FrameSequence& seq) {
    if (seq.frames.size() < 2) {
        throw NoDataError("SI/TI needs at least 2 frames (TI is undefined on one)");
    }
    SiTi result;
    std::vector<double> prev_luma;
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const EquirectFrame& f = seq.frames[i];
        std::vector<double> luma = luma_plane(f);
        result.si = std::max(result.si, stddev(sobel_magnitude(luma, f.width, f.height)));
        if (i > 0) {
            std::vector<double> diff(luma.size());
            for (std::size_t k = 0; k < luma.size(); ++k) diff[k] = luma[k] - prev_luma[k];
            result.ti = std::max(result.ti, stddev(diff));
        }
        prev_luma = std::move(luma);
    }
    return result;
}

// --- PPM ---------------------------------------------------------------------

namespace {

int read_pnm_int(std::istream& in, const std::filesystem::path& path) {
    // PNM headers allow '#' comments between tokens
    int c = in.peek();
    while (c != EOF) {
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string skip;
            std::getline(in, skip);
        } else {
            break;
        }
        c = in.peek();
    }
    int value = 0;
    if (!(in >> value)) throw IoError(path.string() + ": malformed PPM header");
    return value;
}

}  // namespace

EquirectFrame read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string magic;
    in >> magic;
    if (magic != "P6") throw IoError(path.string() + ": not a binary PPM (P6)");
    const int w = read_pnm_int(in, path);
    const int h = read_pnm_int(in, path);
    const int maxval = read_pnm_int(in, path);
    if (maxval != 255) throw IoError(path.string() + ": only maxval 255 is supported");
    in.get();  // single whitespace after maxval
    EquirectFrame frame(w, h);
    in.read(reinterpret_cast<char*>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(frame.pixels.size())) {
        throw IoError(path.string() + ": truncated pixel data");
    }
    return frame;
}

void write_ppm(const std::filesystem::path& path, const EquirectFrame& frame) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.pixels.data()),
              static_cast<std::streamsize>(frame.pixels.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

std::string frame_file_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%06zu.ppm", index);
    return buf;
}

FrameSequence read_frame_dir(const std::filesystem::path& dir) {
    const std::filesystem::path manifest_path = dir / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in) throw IoError("missing manifest: " + manifest_path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(manifest_path.string() + ": " + e.what());
    }
    if (!j.contains("fps") || !j.contains("count")) {
        throw IoError(manifest_path.string() + ": needs 'fps' and 'count'");
    }
    FrameSequence seq;
    seq.fps = j.at("fps").get<double>();
    const std::size_t count = j.at("count").get<std::size_t>();
    seq.frames.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        seq.frames.push_back(read_ppm(dir / frame_file_name(i)));
        if (i > 0 && (seq.frames[i].width != seq.frames[0].width ||
                      seq.frames[i].height != seq.frames[0].height)) {
            throw DomainError("frame " + std::to_string(i) + " dimensions differ from frame 0");
        }
    }
    return seq;
}

void write_frame_dir(const std::filesystem::path& dir, const FrameSequence& seq) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        write_ppm(dir / frame_file_name(i), seq.frames[i]);
    }
    nlohmann::json j;
    j["fps"] = seq.fps;
    j["count"] = seq.frames.size();
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + (dir / "manifest.json").string());
}

}  // namespace align360
