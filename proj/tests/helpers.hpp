#pragma once

// Shared helpers for the test suites: seeded generators and small builders.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "align360/sphere.hpp"
#include "align360/trace.hpp"

namespace testutil {

inline align360::TimedSample random_unit_sample(std::mt19937_64& rng, double t = 0.0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double x = 0.0, y = 0.0, z = 0.0, n = 0.0;
    do {
        x = normal(rng);
        y = normal(rng);
        z = normal(rng);
        n = std::sqrt(x * x + y * y + z * z);
    } while (n < 1e-6);
    return align360::TimedSample{x / n, y / n, z / n, t};
}

// Rotates a sample by a general rotation built from z- and x-axis rotations.
inline align360::TimedSample rotate_general(const align360::TimedSample& u, double about_z,
                                            double about_x) {
    align360::TimedSample r = align360::rotate_about_z(u, about_z);
    const double c = std::cos(about_x), s = std::sin(about_x);
    return align360::TimedSample{r.x, c * r.y - s * r.z, s * r.y + c * r.z, r.t};
}

// Trace moving along the equator at a constant angular speed (degrees/second).
inline align360::Trace uniform_speed_trace(double speed_deg_s, double dt, std::size_t count,
                                           double yaw0_rad = 0.0) {
    align360::Trace trace;
    trace.participant_id = "synthetic";
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double yaw = yaw0_rad + align360::deg2rad(speed_deg_s) * t;
        trace.samples.push_back(align360::TimedSample{std::cos(yaw), std::sin(yaw), 0.0, t});
    }
    return trace;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace testutil
