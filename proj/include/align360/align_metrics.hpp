#pragma once

// Alignment and head-speed metrics around an edit.
//
// The alignment metric is the mean orthodromic distance between the viewport
// trace and the target ROI over a short window; a trial counts as aligned
// when that distance stays strictly below the tolerance tau. Each trial is
// classified by its (before, after) alignment flags into one of four states.

#include <cstddef>
#include <string>
#include <vector>

#include "align360/sphere.hpp"
#include "align360/trace.hpp"

namespace align360 {

struct AlignmentParams {
    double t0 = 0.0;                  // evaluation start = edit start, seconds
    double delta_t = 0.25;            // mean-sampling interval, seconds
    double tau = deg2rad(60.0);       // alignment tolerance, radians
};

// Target ROI center over time: either a constant direction (the default; the
// post-edit ROI sits at the center point) or a step function through sampled
// positions for moving targets.
class ROITrack {
public:
    // Constant ROI at the center point (yaw=0, pitch=0).
    ROITrack();
    explicit ROITrack(const TimedSample& constant);
    explicit ROITrack(std::vector<TimedSample> samples);  // step function, sorted by t

    TimedSample position_at(double t) const;

private:
    std::vector<TimedSample> samples_;
};

struct AlignmentState {
    bool before = false;
    bool after = false;
    int code = 4;  // 1=(aligned,aligned) 2=(aligned,non) 3=(non,aligned) 4=(non,non)
};

int encode_alignment_state(bool before, bool after);

// Mean orthodromic distance (radians) between viewport samples in
// [t0, t0+delta_t] and the ROI position at each sample's timestamp.
// Throws NoDataError on an empty window.
double mean_distance(const Trace& viewport, const ROITrack& roi, double t0, double delta_t);

// True iff mean_distance(params.t0, params.delta_t) < params.tau (strict).
bool is_aligned(const Trace& viewport, const ROITrack& roi, const AlignmentParams& params);

// Before-flag from the window [params.t0 - delta_t, params.t0] (the interval
// ending at the edit start); after-flag from the 1 s window
// [edit_end, edit_end + 1] mean-sampled in delta_t sub-windows. Throws
// NoDataError naming the missing window when either is empty.
AlignmentState alignment_state(const Trace& viewport, const ROITrack& roi, double edit_end,
                               const AlignmentParams& params);

// Mean head speed in degrees/second over [t0, t0+delta_t]: the average of
// d(u_k, u_{k+1}) / (t_{k+1} - t_k) over in-window samples k. Pairs with a
// zero time gap are skipped. Throws NoDataError with fewer than 2 in-window
// samples or when every pair was skipped.
double head_speed(const Trace& trace, double t0, double delta_t);

struct CdfEntry {
    double value = 0.0;
    double fraction = 0.0;  // P(X <= value), reaches 1 at the maximum
};

// Empirical CDF of a speed list; one entry per distinct value.
std::vector<CdfEntry> speed_cdf(std::vector<double> speeds);

// One metrics-CSV row (degrees at this boundary).
struct TrialMetrics {
    std::string participant;
    std::string video;
    std::string edit;
    double d_before_deg = 0.0;
    double d_after_deg = 0.0;
    bool aligned_before = false;
    bool aligned_after = false;
    int state_code = 4;
    double v_before_deg_s = 0.0;
    double v_after_deg_s = 0.0;
};

// Full per-trial evaluation: D/A/state from `params` and edit_end, V from the
// 1 s windows [t0 - 1, t0] and [edit_end, edit_end + 1].
TrialMetrics evaluate_trial(const Trace& viewport, const ROITrack& roi, double edit_end,
                            const AlignmentParams& params);

}  // namespace align360
