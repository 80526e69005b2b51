#pragma once

// Coordinate systems and great-circle geometry on the unit viewing sphere.
//
// Three coordinate systems appear in head-tracking logs and one in the
// analysis code:
//
//   ScreenPoint   (x,y) in [0,1]^2, origin at the top-left corner of the
//                 equirectangular texture. This is what capture platforms log.
//   EulerDir      colatitude phi in [0,pi] (0 = zenith), longitude theta in
//                 [0,2pi]. Plain rescale of the screen rectangle.
//   CenteredEuler yaw/pitch relative to the center point (the initial viewing
//                 direction): yaw in [-pi,pi), pitch in [-pi/2,pi/2].
//   TimedSample   unit 3-vector plus a video timestamp; the atom of all
//                 head-motion analysis.
//
// Cartesian convention: x points at the center point, y to the viewer's left,
// z up (right-handed). All angles are radians; conversion to degrees happens
// only at presentation boundaries.

#include <cmath>
#include <numbers>

namespace align360 {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Wraps an angle into the half-open interval [-pi, pi).
double wrap_pi(double angle);

// Wraps an angle in degrees into [-180, 180).
double wrap_deg(double angle_deg);

struct ScreenPoint {
    double x = 0.0;  // normalized horizontal, [0,1]
    double y = 0.0;  // normalized vertical, [0,1], 0 = top
};

struct EulerDir {
    double phi = 0.0;    // colatitude, [0,pi]
    double theta = 0.0;  // longitude, [0,2pi]
};

struct CenteredEuler {
    double yaw = 0.0;    // [-pi,pi), 0 = center point, positive = left
    double pitch = 0.0;  // [-pi/2,pi/2], positive = up
};

struct TimedSample {
    double x = 1.0;
    double y = 0.0;
    double z = 0.0;
    double t = 0.0;  // video timestamp, seconds

    double dot(const TimedSample& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool is_unit(double tol = 1e-9) const { return std::abs(dot(*this) - 1.0) <= tol; }
};

// Forward chain: screen -> Euler -> centered -> Cartesian.

// theta = 2*pi*x, phi = pi*y. Throws DomainError if p is outside [0,1]^2.
EulerDir screen_to_euler(const ScreenPoint& p);

// yaw = wrap(theta - pi), pitch = pi/2 - phi.
CenteredEuler euler_to_centered(const EulerDir& e);

// x = cos(pitch)cos(yaw), y = cos(pitch)sin(yaw), z = sin(pitch).
TimedSample centered_to_cartesian(const CenteredEuler& c, double t);

// Inverse chain, used to write simulator output in the capture format and to
// validate round trips. At the poles (|pitch| = pi/2) yaw is defined as 0 so
// the inverse is total.
CenteredEuler cartesian_to_centered(const TimedSample& u);
EulerDir centered_to_euler(const CenteredEuler& c);
ScreenPoint euler_to_screen(const EulerDir& e);

// Straight-line (chord) distance between two points on the sphere, in [0,2].
double chord_distance(const TimedSample& u, const TimedSample& v);

// Great-circle distance 2*asin(chord/2), in [0,pi]. The asin argument is
// clamped to [0,1] so accumulated rounding can never produce a NaN.
double orthodromic_distance(const TimedSample& u, const TimedSample& v);

// Rotates a sample about the vertical (z) axis by `angle` radians; positive
// angles rotate toward +y, i.e. increase yaw.
TimedSample rotate_about_z(const TimedSample& u, double angle);

}  // namespace align360
