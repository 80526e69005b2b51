#include "align360/edit_model.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "align360/errors.hpp"
#include "align360/trace.hpp"

namespace align360 {

namespace {
double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }
}

CameraClass camera_class_from_string(const std::string& s) {
    if (s == "fixed") return CameraClass::fixed;
    if (s == "steady") return CameraClass::steady;
    if (s == "dynamic") return CameraClass::dynamic;
    throw ConfigError("unknown camera class '" + s + "'");
}

std::string to_string(CameraClass c) {
    switch (c) {
        case CameraClass::fixed: return "fixed";
        case CameraClass::steady: return "steady";
        case CameraClass::dynamic: return "dynamic";
    }
    throw ConfigError("invalid camera class value");
}

double compute_offset(double theta_r_deg, double omega_deg_s, double t_edit_s) {
    return omega_deg_s * t_edit_s - theta_r_deg;
}

EditTimeline EditTimeline::fade_rotation(const FadeRotation& fr) {
    if (fr.omega <= 0.0) throw ConfigError("fade-rotation requires omega > 0");
    if (fr.t_edit <= 2.0 * fr.t_fade) {
        throw ConfigError("fade-rotation requires t_edit > 2*t_fade (got t_edit=" +
                          std::to_string(fr.t_edit) + ", t_fade=" + std::to_string(fr.t_fade) +
                          ")");
    }
    if (fr.t_fade <= 0.0) throw ConfigError("fade-rotation requires t_fade > 0");
    EditTimeline tl;
    tl.kind_ = fr;
    tl.start_ = fr.t_ini;
    tl.end_ = fr.t_ini + fr.t_edit;
    tl.type_name_ = "fade_rotation";
    return tl;
}

EditTimeline EditTimeline::snap_cut(const SnapCut& sc) {
    if (!(sc.theta_sc > -360.0 && sc.theta_sc < 360.0)) {
        throw ConfigError("snap-cut displacement must lie in (-360, 360) degrees");
    }
    EditTimeline tl;
    tl.kind_ = sc;
    tl.start_ = sc.t_ini;
    tl.end_ = sc.t_ini;
    tl.type_name_ = "snap_cut";
    return tl;
}

EditTimeline EditTimeline::none(double t_ini) {
    EditTimeline tl;
    tl.kind_ = NoEdit{t_ini};
    tl.start_ = t_ini;
    tl.end_ = t_ini;
    tl.type_name_ = "none";
    return tl;
}

double EditTimeline::theta_off_deg() const {
    if (const FadeRotation* fr = std::get_if<FadeRotation>(&kind_)) {
        return sign_of(fr->theta_r) * compute_offset(std::abs(fr->theta_r), fr->omega, fr->t_edit);
    }
    return 0.0;
}

double EditTimeline::yaw_offset_deg(double t) const {
    if (const FadeRotation* fr = std::get_if<FadeRotation>(&kind_)) {
        if (t < fr->t_ini) return 0.0;
        if (t >= fr->t_ini + fr->t_edit) return fr->theta_r;
        const double s = sign_of(fr->theta_r);
        const double mid = fr->t_ini + fr->t_edit / 2.0;
        double yaw = s * fr->omega * (t - fr->t_ini);
        if (t >= mid) yaw -= theta_off_deg();  // jump hidden in the black frame
        return yaw;
    }
    if (const SnapCut* sc = std::get_if<SnapCut>(&kind_)) {
        return t < sc->t_ini ? 0.0 : sc->theta_sc;
    }
    return 0.0;
}

double EditTimeline::fade_alpha(double t) const {
    if (const FadeRotation* fr = std::get_if<FadeRotation>(&kind_)) {
        const double mid = fr->t_ini + fr->t_edit / 2.0;
        const double d = std::abs(t - mid);
        if (d >= fr->t_fade) return 1.0;
        return d / fr->t_fade;
    }
    return 1.0;
}

double EditTimeline::displacement_deg() const {
    if (const FadeRotation* fr = std::get_if<FadeRotation>(&kind_)) return fr->theta_r;
    if (const SnapCut* sc = std::get_if<SnapCut>(&kind_)) return sc->theta_sc;
    return 0.0;
}

double EditTimeline::max_rotation_speed_deg_s() const {
    if (const FadeRotation* fr = std::get_if<FadeRotation>(&kind_)) return fr->omega;
    return 0.0;  // a step is a discontinuity, not continuous rotation
}

EditTimeline build_fade_rotation(const VideoMeta& video, double omega_deg_s, double t_ini,
                                 double t_edit, double t_fade) {
    FadeRotation fr;
    fr.t_ini = t_ini;
    fr.t_edit = t_edit;
    fr.t_fade = t_fade;
    fr.theta_r = video.theta_r;
    fr.omega = omega_deg_s;
    return EditTimeline::fade_rotation(fr);
}

EditTimeline build_snap_cut(const VideoMeta& video, double t_ini) {
    SnapCut sc;
    sc.t_ini = t_ini;
    sc.theta_sc = video.theta_r;
    return EditTimeline::snap_cut(sc);
}

Trace apply_timeline_to_trace(const Trace& trace, const EditTimeline& timeline) {
    Trace out;
    out.participant_id = trace.participant_id;
    out.video_id = trace.video_id;
    out.edit_id = trace.edit_id;
    out.samples.reserve(trace.size());
    for (const TimedSample& s : trace.samples) {
        out.samples.push_back(rotate_about_z(s, -deg2rad(timeline.yaw_offset_deg(s.t))));
    }
    return out;
}

// --- config files ------------------------------------------------------------

namespace {

nlohmann::json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    return j;
}

double require_number(const nlohmann::json& j, const char* key,
                      const std::filesystem::path& path) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ConfigError(path.string() + ": missing numeric field '" + std::string(key) + "'");
    }
    return j.at(key).get<double>();
}

}  // namespace

EditTimeline read_edit_config(const std::filesystem::path& path) {
    const nlohmann::json j = load_json(path);
    if (!j.contains("type") || !j.at("type").is_string()) {
        throw ConfigError(path.string() + ": missing string field 'type'");
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "fade_rotation") {
        FadeRotation fr;
        fr.t_ini = require_number(j, "t_ini", path);
        fr.t_edit = require_number(j, "t_edit", path);
        fr.t_fade = require_number(j, "t_fade", path);
        fr.omega = require_number(j, "omega", path);
        fr.theta_r = require_number(j, "theta_r", path);
        return EditTimeline::fade_rotation(fr);
    }
    if (type == "snap_cut") {
        SnapCut sc;
        sc.t_ini = require_number(j, "t_ini", path);
        sc.theta_sc = require_number(j, "theta_r", path);
        return EditTimeline::snap_cut(sc);
    }
    if (type == "none") {
        return EditTimeline::none(require_number(j, "t_ini", path));
    }
    throw ConfigError(path.string() + ": unknown edit type '" + type + "'");
}

std::string edit_config_json(const EditTimeline& timeline) {
    nlohmann::json j;
    j["type"] = timeline.type_name();
    j["edit_start"] = timeline.edit_start();
    j["edit_end"] = timeline.edit_end();
    if (timeline.is_fade_rotation()) {
        const FadeRotation& fr = timeline.as_fade_rotation();
        j["t_ini"] = fr.t_ini;
        j["t_edit"] = fr.t_edit;
        j["t_fade"] = fr.t_fade;
        j["omega"] = fr.omega;
        j["theta_r"] = fr.theta_r;
        j["theta_off"] = timeline.theta_off_deg();
    } else if (timeline.is_snap_cut()) {
        const SnapCut& sc = timeline.as_snap_cut();
        j["t_ini"] = sc.t_ini;
        j["theta_r"] = sc.theta_sc;
    } else {
        j["t_ini"] = timeline.edit_start();
    }
    return j.dump(2) + "\n";
}

std::vector<VideoMeta> read_video_metadata(const std::filesystem::path& path) {
    const nlohmann::json j = load_json(path);
    if (!j.is_array()) throw ConfigError(path.string() + ": expected a JSON array of videos");
    std::vector<VideoMeta> videos;
    videos.reserve(j.size());
    for (const auto& item : j) {
        VideoMeta v;
        if (!item.contains("name") || !item.at("name").is_string()) {
            throw ConfigError(path.string() + ": video entry missing 'name'");
        }
        v.name = item.at("name").get<std::string>();
        v.camera_class = camera_class_from_string(
            item.value("camera_class", std::string("fixed")));
        v.theta_r = require_number(item, "theta_r", path);
        v.initial_center_shift = item.value("initial_center_shift", 0.0);
        videos.push_back(std::move(v));
    }
    return videos;
}

const VideoMeta& find_video(const std::vector<VideoMeta>& videos, const std::string& name) {
    for (const VideoMeta& v : videos) {
        if (v.name == name) return v;
    }
    throw ConfigError("unknown video '" + name + "'");
}

}  // namespace align360
