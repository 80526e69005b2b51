#include "align360/sphere.hpp"

#include <algorithm>

#include "align360/errors.hpp"

namespace align360 {

double wrap_pi(double angle) {
    double a = std::fmod(angle + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a - kPi;
}

double wrap_deg(double angle_deg) {
    double a = std::fmod(angle_deg + 180.0, 360.0);
    if (a < 0.0) a += 360.0;
    return a - 180.0;
}

EulerDir screen_to_euler(const ScreenPoint& p) {
    if (!(p.x >= 0.0 && p.x <= 1.0) || !(p.y >= 0.0 && p.y <= 1.0)) {
        throw DomainError("screen point (" + std::to_string(p.x) + ", " +
                          std::to_string(p.y) + ") outside [0,1]x[0,1]");
    }
    return EulerDir{kPi * p.y, 2.0 * kPi * p.x};
}

CenteredEuler euler_to_centered(const EulerDir& e) {
    if (!(e.phi >= 0.0 && e.phi <= kPi) || !(e.theta >= 0.0 && e.theta <= 2.0 * kPi)) {
        throw DomainError("euler direction outside phi:[0,pi] theta:[0,2pi]");
    }
    return CenteredEuler{wrap_pi(e.theta - kPi), kPi / 2.0 - e.phi};
}

TimedSample centered_to_cartesian(const CenteredEuler& c, double t) {
    const double cp = std::cos(c.pitch);
    return TimedSample{cp * std::cos(c.yaw), cp * std::sin(c.yaw), std::sin(c.pitch), t};
}

CenteredEuler cartesian_to_centered(const TimedSample& u) {
    const double z = std::clamp(u.z, -1.0, 1.0);
    const double pitch = std::asin(z);
    // yaw undefined at the poles; pin it to 0 so the inverse chain is total
    if (std::abs(u.x) < 1e-15 && std::abs(u.y) < 1e-15) {
        return CenteredEuler{0.0, pitch};
    }
    return CenteredEuler{std::atan2(u.y, u.x), pitch};
}

EulerDir centered_to_euler(const CenteredEuler& c) {
    double theta = c.yaw + kPi;  // atan2 yields [-pi,pi], so theta lands in [0,2pi]
    if (theta < 0.0) theta += 2.0 * kPi;
    if (theta >= 2.0 * kPi) theta -= 2.0 * kPi;
    return EulerDir{kPi / 2.0 - c.pitch, theta};
}

ScreenPoint euler_to_screen(const EulerDir& e) {
    return ScreenPoint{e.theta / (2.0 * kPi), e.phi / kPi};
}

double chord_distance(const TimedSample& u, const TimedSample& v) {
    const double dx = u.x - v.x, dy = u.y - v.y, dz = u.z - v.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double orthodromic_distance(const TimedSample& u, const TimedSample& v) {
    const double half = std::clamp(chord_distance(u, v) / 2.0, 0.0, 1.0);
    return 2.0 * std::asin(half);
}

TimedSample rotate_about_z(const TimedSample& u, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return TimedSample{c * u.x - s * u.y, s * u.x + c * u.y, u.z, u.t};
}

}  // namespace align360
