#pragma once

// Subjective-score analytics: MOS / SOS / 95% confidence intervals over
// 5-point opinion histograms, plus the hypothesis tests used on them
// (Welch's t, Kruskal-Wallis H with tie correction, Wilcoxon rank-sum with
// continuity correction, Benjamini-Hochberg FDR adjustment).

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace align360 {

enum class QoeFactor { presence, comfort, qoe };

QoeFactor factor_from_string(const std::string& s);
std::string to_string(QoeFactor f);

struct ScoreVector {
    std::array<std::int64_t, 5> counts{};  // counts of ratings 1..5
    QoeFactor factor = QoeFactor::qoe;
    std::string video_id;
    std::string edit_id;

    std::int64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3] + counts[4]; }
    void add(int score);  // score in 1..5, throws DomainError otherwise
};

// Weighted mean sum(i * counts_i) / N. Throws NoDataError when N = 0.
double mos(const ScoreVector& v);

// Sample standard deviation sqrt(sum_i counts_i * (i - MOS)^2 / (N - 1)).
// Throws NoDataError when N < 2.
double sos(const ScoreVector& v);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// MOS +- 1.96 * SOS / sqrt(N).
Interval ci95(const ScoreVector& v);

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;  // two-sided
};

// Welch's unequal-variance t-test with Welch-Satterthwaite df. Requires both
// samples to have >= 2 values and nonzero variance (DegenerateInputError).
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct KruskalResult {
    double h = 0.0;
    int df = 0;
    double p = 1.0;
};

// Kruskal-Wallis H with mid-ranks and the standard tie-correction divisor;
// p from the chi-square upper tail with df = groups - 1. Throws
// DegenerateInputError when every value is identical.
KruskalResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

struct RankSumResult {
    double w = 0.0;  // Mann-Whitney U of the first sample
    double p = 1.0;  // two-sided, normal approximation with continuity correction
};

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

// Benjamini-Hochberg step-up adjustment; monotone-enforced, clipped to 1,
// returned in the input order. Throws DomainError on p outside [0,1].
std::vector<double> fdr_adjust(std::span<const double> pvals);

// Upper-tail helpers exposed for the test suites.
double student_t_sf_two_sided(double t, double df);
double chi_square_sf(double x, int df);

// Simulator-sickness style symptom tally: 6 symptoms, 4 severity levels.
struct SymptomTally {
    enum Severity { none = 0, slight = 1, moderate = 2, severe = 3 };
    static constexpr int kSymptoms = 6;
    static constexpr const char* kSymptomNames[kSymptoms] = {
        "nausea", "vertigo", "sweating", "stomach_awareness",
        "increased_salivation", "difficulty_concentrating"};

    std::array<std::array<std::int64_t, 4>, kSymptoms> counts{};

    void add(int symptom, Severity severity);
    std::int64_t total(Severity severity) const;  // across symptoms
    std::int64_t total() const;
};

}  // namespace align360
