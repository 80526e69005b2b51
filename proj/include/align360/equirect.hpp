#pragma once

// Equirectangular frame operations.
//
// In the 2:1 equirectangular projection a yaw rotation of the visual sphere
// is a circular shift of pixel columns, which keeps renders bit-exact and
// testable; sub-pixel interpolation is deliberately rejected. Frames travel
// as binary PPM (P6, maxval 255) with a small JSON manifest per sequence.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace align360 {

class EditTimeline;  // edit_model.hpp

struct EquirectFrame {
    int width = 0;   // must equal 2*height
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major RGB, 3 bytes per pixel

    EquirectFrame() = default;
    EquirectFrame(int w, int h);  // validates w == 2*h, zero-filled

    std::size_t byte_count() const { return pixels.size(); }
    std::uint8_t* pixel(int x, int y) { return pixels.data() + 3 * (std::size_t(y) * width + x); }
    const std::uint8_t* pixel(int x, int y) const {
        return pixels.data() + 3 * (std::size_t(y) * width + x);
    }
    bool operator==(const EquirectFrame&) const = default;
};

struct FrameSequence {
    std::vector<EquirectFrame> frames;
    double fps = 60.0;

    double frame_time(std::size_t i) const { return static_cast<double>(i) / fps; }
};

// Circularly shifts columns by round-half-away-from-zero(theta/360 * width).
EquirectFrame rotate_yaw(const EquirectFrame& frame, double theta_deg);

// Scales every channel to floor(v * alpha). Throws DomainError outside [0,1].
EquirectFrame apply_fade(const EquirectFrame& frame, double alpha);

// Frame i at time i/fps gets rotate_yaw(yaw_offset(t)) then
// apply_fade(fade_alpha(t)). Throws CoverageError if the sequence ends before
// the timeline's edit_end.
FrameSequence render_edit(const FrameSequence& seq, const EditTimeline& timeline);

struct SiTi {
    double si = 0.0;
    double ti = 0.0;
};

// ITU-style content descriptors on the luma plane (0.299R+0.587G+0.114B):
// SI = max over frames of the stddev of the Sobel gradient magnitude,
// TI = max over successive frame pairs of the stddev of the luma difference.
// Sobel wraps horizontally (longitude is periodic) and replicates the top and
// bottom rows. Throws NoDataError with fewer than 2 frames.
SiTi compute_si_ti(const FrameSequence& seq);

// --- PPM + sequence manifest -------------------------------------------------

EquirectFrame read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const EquirectFrame& frame);

// Directory layout: frame_000000.ppm ... plus manifest.json {"fps":60,"count":N}.
std::string frame_file_name(std::size_t index);
FrameSequence read_frame_dir(const std::filesystem::path& dir);
void write_frame_dir(const std::filesystem::path& dir, const FrameSequence& seq);

}  // namespace align360
