#pragma once

// Head-tracking trace ingest and conditioning.
//
// Raw logs arrive as (timestamp, screen point) rows. preprocess() runs the
// full coordinate chain from sphere.hpp and collapses duplicate timestamps;
// everything downstream works on unit vectors. Capture frequency fluctuates,
// so no operation assumes a uniform sample rate.

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "align360/sphere.hpp"

namespace align360 {

struct RawRecord {
    double t = 0.0;
    ScreenPoint p;
};

struct RawTrace {
    std::vector<RawRecord> records;  // timestamps non-decreasing
    std::string participant_id;
    std::string video_id;
    std::string edit_id;
};

struct Trace {
    std::vector<TimedSample> samples;  // unit norm, timestamps strictly increasing
    std::string participant_id;
    std::string video_id;
    std::string edit_id;

    bool empty() const { return samples.empty(); }
    std::size_t size() const { return samples.size(); }
};

struct SamplingConfig {
    double delta_t = 0.25;     // seconds
    double speed_cap = 150.0;  // degrees/second
};

// Applies screen -> Euler -> centered -> Cartesian to every record. Duplicate
// timestamps collapse to their last record. Throws DomainError on coordinates
// outside [0,1] or decreasing timestamps, NoDataError if fewer than two usable
// records remain.
Trace preprocess(const RawTrace& raw);

// Index of the sample whose timestamp minimizes |t_k - t_query|; ties break
// toward the smaller index. Throws NoDataError on an empty trace.
std::size_t near(const Trace& trace, double t_query);

// [first, last) index range of samples with t in the closed window
// [t0, t0 + window]. May be empty.
std::pair<std::size_t, std::size_t> window_indices(const Trace& trace, double t0,
                                                   double window);

// Component-wise mean of the samples in [t0, t0+delta_t], renormalized to unit
// length, stamped with t0. Throws NoDataError on an empty window, DomainError
// if the samples cancel to a zero mean.
TimedSample mean_sample(const Trace& trace, double t0, double delta_t);

struct SpeedFilterResult {
    Trace trace;
    std::size_t removed = 0;
};

// Removes every sample whose instantaneous speed toward its successor exceeds
// cfg.speed_cap (the earlier sample of each offending pair). Never reorders.
SpeedFilterResult speed_filter(const Trace& trace, const SamplingConfig& cfg);

// Instantaneous speeds d(u_k, u_{k+1}) / (t_{k+1} - t_k) in degrees/second,
// one per consecutive pair. Zero time gaps are skipped.
std::vector<double> instantaneous_speeds_deg(const Trace& trace);

// --- CSV formats -----------------------------------------------------------
//
// Raw trace CSV: header "t,x,y", one record per line, '#' comment lines
// ignored. Identifiers travel as "# key=value" comments when present, else as
// an "participant__video__edit" filename stem.
//
// Processed trace CSV: header "t,X,Y,Z", 9 significant digits.

RawTrace read_raw_trace_csv(const std::filesystem::path& path);
void write_raw_trace_csv(const std::filesystem::path& path, const RawTrace& raw);
void write_processed_trace_csv(const std::filesystem::path& path, const Trace& trace);

// Converts a processed trace back into capture-format records via the inverse
// coordinate chain (used by the simulator so synthetic and real data share a
// single on-disk format).
RawTrace to_raw(const Trace& trace);

}  // namespace align360
