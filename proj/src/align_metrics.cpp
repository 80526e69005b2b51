#include "align360/align_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "align360/errors.hpp"

namespace align360 {

ROITrack::ROITrack() : samples_{TimedSample{1.0, 0.0, 0.0, 0.0}} {}

ROITrack::ROITrack(const TimedSample& constant) : samples_{constant} {}

ROITrack::ROITrack(std::vector<TimedSample> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw DomainError("ROI track needs at least one position");
    for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
        if (samples_[i + 1].t < samples_[i].t) {
            throw DomainError("ROI track timestamps must be non-decreasing");
        }
    }
}

TimedSample ROITrack::position_at(double t) const {
    // step function: value of the last knot at or before t
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double q, const TimedSample& s) { return q < s.t; });
    if (it == samples_.begin()) return samples_.front();
    return *(it - 1);
}

int encode_alignment_state(bool before, bool after) {
    if (before && after) return 1;
    if (before && !after) return 2;
    if (!before && after) return 3;
    return 4;
}

double mean_distance(const Trace& viewport, const ROITrack& roi, double t0, double delta_t) {
    const auto [first, last] = window_indices(viewport, t0, delta_t);
    if (first == last) {
        throw NoDataError("mean_distance: no viewport samples in [" + std::to_string(t0) +
                          ", " + std::to_string(t0 + delta_t) + "]");
    }
    double sum = 0.0;
    for (std::size_t k = first; k < last; ++k) {
        const TimedSample& u = viewport.samples[k];
        sum += orthodromic_distance(u, roi.position_at(u.t));
    }
    return sum / static_cast<double>(last - first);
}

bool is_aligned(const Trace& viewport, const ROITrack& roi, const AlignmentParams& params) {
    return mean_distance(viewport, roi, params.t0, params.delta_t) < params.tau;
}

namespace {

// Mean of per-sub-window mean distances across [t0, t0 + span], sub-window
// width delta_t; empty sub-windows are skipped.
double windowed_mean_distance(const Trace& viewport, const ROITrack& roi, double t0,
                              double span, double delta_t, const char* label) {
    double sum = 0.0;
    int populated = 0;
    const int n_sub = std::max(1, static_cast<int>(std::round(span / delta_t)));
    for (int j = 0; j < n_sub; ++j) {
        try {
            sum += mean_distance(viewport, roi, t0 + j * delta_t, delta_t);
            ++populated;
        } catch (const NoDataError&) {
            // sparse capture: tolerate empty sub-windows
        }
    }
    if (populated == 0) {
        throw NoDataError(std::string("alignment_state: no samples in the ") + label +
                          " window [" + std::to_string(t0) + ", " + std::to_string(t0 + span) +
                          "]");
    }
    return sum / populated;
}

}  // namespace

AlignmentState alignment_state(const Trace& viewport, const ROITrack& roi, double edit_end,
                               const AlignmentParams& params) {
    double d_before = 0.0;
    try {
        d_before = mean_distance(viewport, roi, params.t0 - params.delta_t, params.delta_t);
    } catch (const NoDataError&) {
        throw NoDataError("alignment_state: no samples in the before window [" +
                          std::to_string(params.t0 - params.delta_t) + ", " +
                          std::to_string(params.t0) + "]");
    }
    const double d_after =
        windowed_mean_distance(viewport, roi, edit_end, 1.0, params.delta_t, "after");

    AlignmentState state;
    state.before = d_before < params.tau;
    state.after = d_after < params.tau;
    state.code = encode_alignment_state(state.before, state.after);
    return state;
}

double head_speed(const Trace& trace, double t0, double delta_t) {
    const auto [first, last] = window_indices(trace, t0, delta_t);
    if (last - first < 2) {
        throw NoDataError("head_speed: fewer than 2 samples in [" + std::to_string(t0) + ", " +
                          std::to_string(t0 + delta_t) + "]");
    }
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t k = first; k < last && k + 1 < trace.size(); ++k) {
        const double dt = trace.samples[k + 1].t - trace.samples[k].t;
        if (dt <= 0.0) continue;  // duplicate timestamp: pair skipped
        sum += orthodromic_distance(trace.samples[k], trace.samples[k + 1]) / dt;
        ++pairs;
    }
    if (pairs == 0) {
        throw NoDataError("head_speed: every in-window pair had a zero time gap");
    }
    return rad2deg(sum / static_cast<double>(pairs));
}

std::vector<CdfEntry> speed_cdf(std::vector<double> speeds) {
    if (speeds.empty()) throw NoDataError("speed_cdf: empty speed list");
    std::sort(speeds.begin(), speeds.end());
    const double n = static_cast<double>(speeds.size());
    std::vector<CdfEntry> cdf;
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        // collapse runs of equal values into one entry carrying the top rank
        if (i + 1 < speeds.size() && speeds[i + 1] == speeds[i]) continue;
        cdf.push_back(CdfEntry{speeds[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

TrialMetrics evaluate_trial(const Trace& viewport, const ROITrack& roi, double edit_end,
                            const AlignmentParams& params) {
    TrialMetrics m;
    m.participant = viewport.participant_id;
    m.video = viewport.video_id;
    m.edit = viewport.edit_id;

    const double d_before =
        mean_distance(viewport, roi, params.t0 - params.delta_t, params.delta_t);
    const double d_after =
        windowed_mean_distance(viewport, roi, edit_end, 1.0, params.delta_t, "after");
    m.d_before_deg = rad2deg(d_before);
    m.d_after_deg = rad2deg(d_after);
    m.aligned_before = d_before < params.tau;
    m.aligned_after = d_after < params.tau;
    m.state_code = encode_alignment_state(m.aligned_before, m.aligned_after);

    m.v_before_deg_s = head_speed(viewport, params.t0 - 1.0, 1.0);
    m.v_after_deg_s = head_speed(viewport, edit_end, 1.0);
    return m;
}

}  // namespace align360
