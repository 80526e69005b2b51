#pragma once

// Synthetic head-motion traces with exploratory and fixation regimes around
// an alignment edit.
//
// Motion model: an Ornstein-Uhlenbeck velocity in yaw whose desired value
// pursues a slowly drifting exploration target around the center point.
// Once the edit ends (plus a reaction delay) and fixation is enabled, the
// desired velocity drops to zero, the velocity noise is damped, and the yaw
// position mean-reverts toward the post-edit ROI at rate fixation_gain
// (integrated exponentially, so arbitrarily large gains stay stable). Pitch
// is a small-amplitude independent mean-reverting process.
//
// Randomness contract: all draws come from a single mt19937_64 seeded from
// the profile; normal variates use an explicit Box-Muller transform so traces
// do not depend on the standard library's unspecified normal_distribution
// algorithm. Every step consumes a fixed number of draws regardless of
// regime, which keeps pre-edit paths identical when only post-edit behavior
// changes. Determinism is guaranteed within a platform.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "align360/edit_model.hpp"
#include "align360/trace.hpp"

namespace align360 {

struct ViewerProfile {
    double explore_speed_mean = 35.0;   // degrees/second
    double explore_volatility = 25.0;   // degrees/second per sqrt(second)
    double fixation_gain = 1.5;         // 1/second; 0 disables fixation
    double reaction_delay = 0.3;        // seconds
    std::uint64_t rng_seed = 1;
};

struct SimScenario {
    VideoMeta video;
    EditTimeline timeline = EditTimeline::none();
    double duration = 30.0;     // seconds, must cover timeline.edit_end()
    double sample_rate = 50.0;  // Hz
};

// Short condition label for an edit ("fr40", "sc", "none").
std::string edit_label(const EditTimeline& timeline);

// Deterministic per-viewer seed from a cohort seed (splitmix64 splitting rule).
std::uint64_t derive_viewer_seed(std::uint64_t cohort_seed, std::size_t index);

// One synthetic trace. Throws ConfigError when the scenario duration does not
// cover the edit or rates are non-positive.
Trace simulate_viewer(const ViewerProfile& profile, const SimScenario& scenario);

// Independent traces for the given profiles (each profile carries its own seed).
std::vector<Trace> simulate_cohort(std::span<const ViewerProfile> profiles,
                                   const SimScenario& scenario);

// Cohort of `count` copies of base_profile with seeds derived from cohort_seed,
// participant ids p000, p001, ...
std::vector<Trace> simulate_cohort(const ViewerProfile& base_profile, std::size_t count,
                                   std::uint64_t cohort_seed, const SimScenario& scenario);

// Scenario config JSON:
//   {"video":{...}, "edit":{...}, "duration":30.0, "sample_rate":50.0,
//    "profile":{"explore_speed_mean":35.0, ...}}   (profile optional)
struct ScenarioConfig {
    SimScenario scenario;
    ViewerProfile profile;
};
ScenarioConfig read_scenario_config(const std::filesystem::path& path);

}  // namespace align360
