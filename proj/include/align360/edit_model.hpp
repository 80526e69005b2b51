#pragma once

// Alignment-edit timelines.
//
// Two edit types bring a region of interest into the viewer's viewport by
// rotating the visual sphere in yaw:
//
//   fade-rotation  constant-rate rotation over [t_ini, t_ini + t_edit],
//                  combined with a linear fade-out-in of half-width t_fade
//                  centered on the blackout midpoint. The angular offset that
//                  keeps the rate at omega while still landing on theta_r is
//                  applied as a single jump at the midpoint, where the frame
//                  is fully black.
//   snap-cut       the whole displacement in one step at t_ini, no fade.
//
// Angles are degrees at this layer (they come straight from production
// configs); omega is a magnitude and the rotation direction follows the sign
// of theta_r. A timeline is immutable once built and evaluation is pure.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace align360 {

struct Trace;  // trace.hpp

enum class CameraClass { fixed, steady, dynamic };

CameraClass camera_class_from_string(const std::string& s);
std::string to_string(CameraClass c);

struct VideoMeta {
    std::string name;
    CameraClass camera_class = CameraClass::fixed;
    double theta_r = 0.0;              // degrees, signed displacement to the ROI
    double initial_center_shift = 0.0; // degrees applied when preparing the source
};

struct FadeRotation {
    double t_ini = 14.0;   // seconds
    double t_edit = 2.0;   // seconds, must exceed 2*t_fade
    double t_fade = 0.2;   // seconds (fade-out and fade-in each last t_fade)
    double theta_r = 0.0;  // degrees, signed
    double omega = 0.0;    // degrees/second, positive magnitude
};

struct SnapCut {
    double t_ini = 15.0;   // seconds
    double theta_sc = 0.0; // degrees, signed, |theta_sc| < 360
};

// Baseline marker: no rotation, no fade, but a nominal edit time so windowed
// metrics stay well defined for unedited stimuli.
struct NoEdit {
    double t_ini = 15.0;
};

// theta_off = sign(theta_r) * (omega * t_edit - |theta_r|). Negative values
// are legal: the black-frame jump then advances the rotation instead of
// rewinding it.
double compute_offset(double theta_r_deg, double omega_deg_s, double t_edit_s);

class EditTimeline {
public:
    static EditTimeline fade_rotation(const FadeRotation& fr);
    static EditTimeline snap_cut(const SnapCut& sc);
    static EditTimeline none(double t_ini = 15.0);

    // Yaw offset of the visual sphere at time t, degrees, unwrapped.
    // 0 before edit_start, theta_r from edit_end on, right-continuous at jumps.
    double yaw_offset_deg(double t) const;

    // Fade multiplier in [0,1]; 1 outside the fade span, exactly 0 at the
    // blackout midpoint of a fade-rotation.
    double fade_alpha(double t) const;

    double edit_start() const { return start_; }
    double edit_end() const { return end_; }

    // Total displacement in degrees (theta_r; 0 for the baseline).
    double displacement_deg() const;

    // Supremum of |d yaw/dt| excluding jump discontinuities, degrees/second.
    double max_rotation_speed_deg_s() const;

    const std::string& type_name() const { return type_name_; }

    bool is_fade_rotation() const { return std::holds_alternative<FadeRotation>(kind_); }
    bool is_snap_cut() const { return std::holds_alternative<SnapCut>(kind_); }
    bool is_none() const { return std::holds_alternative<NoEdit>(kind_); }

    const FadeRotation& as_fade_rotation() const { return std::get<FadeRotation>(kind_); }
    const SnapCut& as_snap_cut() const { return std::get<SnapCut>(kind_); }

    // Signed black-frame offset (fade-rotation only; 0 otherwise).
    double theta_off_deg() const;

private:
    EditTimeline() = default;
    std::variant<FadeRotation, SnapCut, NoEdit> kind_;
    double start_ = 0.0;
    double end_ = 0.0;
    std::string type_name_;
};

// Builders from video metadata. Fade-rotation keeps the production defaults
// (t_ini = 14 s, t_edit = 2 s, t_fade = 200 ms) unless overridden; snap-cut
// triggers at 15 s.
EditTimeline build_fade_rotation(const VideoMeta& video, double omega_deg_s,
                                 double t_ini = 14.0, double t_edit = 2.0,
                                 double t_fade = 0.2);
EditTimeline build_snap_cut(const VideoMeta& video, double t_ini = 15.0);

// Rotates every sample about the vertical axis by -yaw_offset(t): the
// viewport position expressed in the post-edit content frame. Offline traces
// are recorded in content coordinates, so this is how an edit specified
// separately from the capture is folded into a trace.
Trace apply_timeline_to_trace(const Trace& trace, const EditTimeline& timeline);

// --- config files ------------------------------------------------------------
//
// Edit config JSON:
//   {"type":"fade_rotation","t_ini":14.0,"t_edit":2.0,"t_fade":0.2,
//    "omega":40.0,"theta_r":86.0}
//   {"type":"snap_cut","t_ini":15.0,"theta_r":180.0}
//   {"type":"none","t_ini":15.0}
//
// Video metadata JSON: array of
//   {"name":"Dance","camera_class":"fixed","theta_r":86.0,
//    "initial_center_shift":-86.0}

EditTimeline read_edit_config(const std::filesystem::path& path);
std::string edit_config_json(const EditTimeline& timeline);  // resolved, incl. theta_off

std::vector<VideoMeta> read_video_metadata(const std::filesystem::path& path);
const VideoMeta& find_video(const std::vector<VideoMeta>& videos, const std::string& name);

}  // namespace align360
