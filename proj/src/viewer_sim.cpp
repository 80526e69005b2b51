#include "align360/viewer_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include <json.hpp>

#include "align360/errors.hpp"
#include "align360/sphere.hpp"

namespace align360 {

namespace {

// internal dynamics constants (degrees, seconds)
constexpr double kVelocityRelaxation = 2.0;    // 1/s, OU pull of v toward v_des
constexpr double kPursuitScale = 30.0;         // deg, tanh saturation distance
constexpr double kTargetPeriod = 1.5;          // s, exploration target resample
constexpr double kTargetStd = 35.0;            // deg, exploration target spread
constexpr double kTargetClamp = 120.0;         // deg
constexpr double kPitchRelaxation = 1.5;       // 1/s
constexpr double kPitchStdRatio = 0.12;        // x explore_volatility, deg/sqrt(s)
constexpr double kPitchClamp = 85.0;           // deg
constexpr double kJitterRatio = 0.002;         // x explore_volatility, deg per sample
constexpr double kFixationDamping = 0.25;      // volatility multiplier while fixating

struct Gaussian {
    std::mt19937_64 rng;
    double cached = 0.0;
    bool has_cached = false;

    explicit Gaussian(std::uint64_t seed) : rng(seed) {}

    double uniform01() {
        // 53-bit mantissa in (0,1]
        return 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }

    double next() {
        if (has_cached) {
            has_cached = false;
            return cached;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        cached = r * std::sin(a);
        has_cached = true;
        return r * std::cos(a);
    }
};

}  // namespace

std::string edit_label(const EditTimeline& timeline) {
    if (timeline.is_fade_rotation()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "fr%g", timeline.as_fade_rotation().omega);
        return buf;
    }
    if (timeline.is_snap_cut()) return "sc";
    return "none";
}

std::uint64_t derive_viewer_seed(std::uint64_t cohort_seed, std::size_t index) {
    // splitmix64 over the cohort seed xor a golden-ratio multiple of the index
    std::uint64_t z = cohort_seed ^ ((static_cast<std::uint64_t>(index) + 1) *
                                     0x9E3779B97F4A7C15ULL);
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Trace simulate_viewer(const ViewerProfile& profile, const SimScenario& scenario) {
    if (scenario.sample_rate <= 0.0) throw ConfigError("sample_rate must be positive");
    if (scenario.duration < scenario.timeline.edit_end()) {
        throw ConfigError("scenario duration " + std::to_string(scenario.duration) +
                          " s does not cover the edit end at " +
                          std::to_string(scenario.timeline.edit_end()) + " s");
    }
    if (profile.explore_speed_mean < 0.0 || profile.explore_volatility < 0.0 ||
        profile.fixation_gain < 0.0 || profile.reaction_delay < 0.0) {
        throw ConfigError("viewer profile rates must be non-negative");
    }

    const double dt = 1.0 / scenario.sample_rate;
    const double sqrt_dt = std::sqrt(dt);
    const std::size_t steps = static_cast<std::size_t>(std::llround(
                                  scenario.duration * scenario.sample_rate)) + 1;
    const std::size_t target_every =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                     kTargetPeriod * scenario.sample_rate)));
    const double fixation_from = scenario.timeline.edit_end() + profile.reaction_delay;
    const bool fixation_enabled = profile.fixation_gain > 0.0;

    Gaussian g(profile.rng_seed);

    double yaw = 0.0;       // world frame, degrees; the center point is 0
    double pitch = 0.0;
    double velocity = 0.0;  // deg/s
    double target = 0.0;

    Trace trace;
    trace.video_id = scenario.video.name;
    trace.edit_id = edit_label(scenario.timeline);
    trace.samples.reserve(steps);

    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;

        // fixed draw schedule: target (periodically), velocity, pitch, 2x jitter
        if (k % target_every == 0) {
            target = std::clamp(g.next() * kTargetStd, -kTargetClamp, kTargetClamp);
        }
        const double n_vel = g.next();
        const double n_pitch = g.next();
        const double n_jy = g.next();
        const double n_jp = g.next();

        const bool fixating = fixation_enabled && t >= fixation_from;
        const double damping = fixating ? kFixationDamping : 1.0;
        const double v_des =
            fixating ? 0.0
                     : profile.explore_speed_mean * std::tanh((target - yaw) / kPursuitScale);

        velocity += -kVelocityRelaxation * (velocity - v_des) * dt +
                    profile.explore_volatility * damping * sqrt_dt * n_vel;
        yaw += velocity * dt;
        if (fixating) {
            // revert the wrapped displacement to the ROI (yaw 0) with an
            // exponential integrator: stable for arbitrarily large gains
            const double disp = wrap_deg(yaw);
            yaw += disp * (std::exp(-profile.fixation_gain * dt) - 1.0);
        }

        const double pitch_pull = std::exp(-kPitchRelaxation * dt);
        pitch = pitch * pitch_pull +
                kPitchStdRatio * profile.explore_volatility * damping * sqrt_dt * n_pitch;
        pitch = std::clamp(pitch, -kPitchClamp, kPitchClamp);

        const double jitter = kJitterRatio * profile.explore_volatility;
        const double yaw_out = wrap_pi(deg2rad(yaw + jitter * n_jy));
        const double pitch_out =
            std::clamp(deg2rad(pitch + jitter * n_jp), -kPi / 2.0, kPi / 2.0);
        trace.samples.push_back(
            centered_to_cartesian(CenteredEuler{yaw_out, pitch_out}, t));
    }
    return trace;
}

std::vector<Trace> simulate_cohort(std::span<const ViewerProfile> profiles,
                                   const SimScenario& scenario) {
    if (profiles.empty()) throw ConfigError("cohort needs at least one profile");
    std::vector<Trace> traces;
    traces.reserve(profiles.size());
    char buf[32];
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        Trace t = simulate_viewer(profiles[i], scenario);
        std::snprintf(buf, sizeof(buf), "p%03zu", i);
        t.participant_id = buf;
        traces.push_back(std::move(t));
    }
    return traces;
}

std::vector<Trace> simulate_cohort(const ViewerProfile& base_profile, std::size_t count,
                                   std::uint64_t cohort_seed, const SimScenario& scenario) {
    if (count == 0) throw ConfigError("cohort size must be positive");
    std::vector<ViewerProfile> profiles(count, base_profile);
    for (std::size_t i = 0; i < count; ++i) {
        profiles[i].rng_seed = derive_viewer_seed(cohort_seed, i);
    }
    return simulate_cohort(profiles, scenario);
}

ScenarioConfig read_scenario_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }

    ScenarioConfig cfg;
    if (!j.contains("video") || !j.contains("edit")) {
        throw ConfigError(path.string() + ": scenario needs 'video' and 'edit' objects");
    }

    // video block mirrors the video metadata schema
    const auto& jv = j.at("video");
    cfg.scenario.video.name = jv.value("name", std::string("unnamed"));
    cfg.scenario.video.camera_class =
        camera_class_from_string(jv.value("camera_class", std::string("fixed")));
    cfg.scenario.video.theta_r = jv.value("theta_r", 0.0);
    cfg.scenario.video.initial_center_shift = jv.value("initial_center_shift", 0.0);

    // edit block: same schema as a standalone edit config file
    {
        const auto& je = j.at("edit");
        const std::string type = je.value("type", std::string());
        if (type == "fade_rotation") {
            FadeRotation fr;
            fr.t_ini = je.value("t_ini", 14.0);
            fr.t_edit = je.value("t_edit", 2.0);
            fr.t_fade = je.value("t_fade", 0.2);
            fr.omega = je.value("omega", 0.0);
            fr.theta_r = je.value("theta_r", cfg.scenario.video.theta_r);
            cfg.scenario.timeline = EditTimeline::fade_rotation(fr);
        } else if (type == "snap_cut") {
            SnapCut sc;
            sc.t_ini = je.value("t_ini", 15.0);
            sc.theta_sc = je.value("theta_r", cfg.scenario.video.theta_r);
            cfg.scenario.timeline = EditTimeline::snap_cut(sc);
        } else if (type == "none") {
            cfg.scenario.timeline = EditTimeline::none(je.value("t_ini", 15.0));
        } else {
            throw ConfigError(path.string() + ": unknown edit type '" + type + "'");
        }
    }

    cfg.scenario.duration = j.value("duration", 30.0);
    cfg.scenario.sample_rate = j.value("sample_rate", 50.0);

    if (j.contains("profile")) {
        const auto& jp = j.at("profile");
        cfg.profile.explore_speed_mean =
            jp.value("explore_speed_mean", cfg.profile.explore_speed_mean);
        cfg.profile.explore_volatility =
            jp.value("explore_volatility", cfg.profile.explore_volatility);
        cfg.profile.fixation_gain = jp.value("fixation_gain", cfg.profile.fixation_gain);
        cfg.profile.reaction_delay = jp.value("reaction_delay", cfg.profile.reaction_delay);
    }
    return cfg;
}

}  // namespace align360
