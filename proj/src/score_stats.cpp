#include "align360/score_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "align360/errors.hpp"

namespace align360 {

QoeFactor factor_from_string(const std::string& s) {
    if (s == "presence") return QoeFactor::presence;
    if (s == "comfort") return QoeFactor::comfort;
    if (s == "qoe") return QoeFactor::qoe;
    throw DomainError("unknown QoE factor '" + s + "'");
}

std::string to_string(QoeFactor f) {
    switch (f) {
        case QoeFactor::presence: return "presence";
        case QoeFactor::comfort: return "comfort";
        case QoeFactor::qoe: return "qoe";
    }
    throw DomainError("invalid QoE factor value");
}

void ScoreVector::add(int score) {
    if (score < 1 || score > 5) {
        throw DomainError("opinion score " + std::to_string(score) + " outside 1..5");
    }
    ++counts[score - 1];
}

double mos(const ScoreVector& v) {
    const std::int64_t n = v.total();
    if (n < 1) throw NoDataError("MOS of an empty score vector");
    double weighted = 0.0;
    for (int i = 0; i < 5; ++i) weighted += (i + 1) * static_cast<double>(v.counts[i]);
    return weighted / static_cast<double>(n);
}

double sos(const ScoreVector& v) {
    const std::int64_t n = v.total();
    if (n < 2) throw NoDataError("SOS needs at least 2 ratings");
    const double m = mos(v);
    double ss = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double d = (i + 1) - m;
        ss += static_cast<double>(v.counts[i]) * d * d;
    }
    return std::sqrt(ss / static_cast<double>(n - 1));
}

Interval ci95(const ScoreVector& v) {
    const double m = mos(v);
    const double half = 1.96 * sos(v) / std::sqrt(static_cast<double>(v.total()));
    return Interval{m - half, m + half};
}

double student_t_sf_two_sided(double t, double df) {
    const boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double chi_square_sf(double x, int df) {
    if (x <= 0.0) return 1.0;
    const boost::math::chi_squared dist(static_cast<double>(df));
    return boost::math::cdf(boost::math::complement(dist, x));
}

namespace {

struct Moments {
    double mean = 0.0;
    double var = 0.0;  // sample variance (n-1)
    std::size_t n = 0;
};

Moments moments(std::span<const double> xs) {
    Moments m;
    m.n = xs.size();
    if (m.n == 0) return m;
    m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(m.n);
    if (m.n >= 2) {
        double ss = 0.0;
        for (double x : xs) ss += (x - m.mean) * (x - m.mean);
        m.var = ss / static_cast<double>(m.n - 1);
    }
    return m;
}

// Mid-ranks over the pooled values; `out` receives the rank of each value in
// pool order. Returns sum of (t^3 - t) over tie groups for the corrections.
double mid_ranks(std::vector<std::pair<double, std::size_t>>& pool, std::vector<double>& out) {
    std::sort(pool.begin(), pool.end());
    out.assign(pool.size(), 0.0);
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < pool.size()) {
        std::size_t j = i;
        while (j + 1 < pool.size() && pool[j + 1].first == pool[i].first) ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        const double ties = static_cast<double>(j - i + 1);
        tie_term += ties * ties * ties - ties;
        for (std::size_t k = i; k <= j; ++k) out[pool[k].second] = rank;
        i = j + 1;
    }
    return tie_term;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

}  // namespace

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    const Moments ma = moments(a);
    const Moments mb = moments(b);
    if (ma.n < 2 || mb.n < 2) {
        throw DegenerateInputError("Welch's t-test needs >= 2 values per sample");
    }
    if (ma.var <= 0.0 || mb.var <= 0.0) {
        throw DegenerateInputError("Welch's t-test needs nonzero variance in both samples");
    }
    const double sa = ma.var / static_cast<double>(ma.n);
    const double sb = mb.var / static_cast<double>(mb.n);
    WelchResult r;
    r.t = (ma.mean - mb.mean) / std::sqrt(sa + sb);
    r.df = (sa + sb) * (sa + sb) /
           (sa * sa / static_cast<double>(ma.n - 1) + sb * sb / static_cast<double>(mb.n - 1));
    r.p = student_t_sf_two_sided(r.t, r.df);
    return r;
}

KruskalResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw DegenerateInputError("Kruskal-Wallis needs >= 2 groups");
    std::size_t total = 0;
    for (const auto& g : groups) {
        if (g.empty()) throw DegenerateInputError("Kruskal-Wallis: empty group");
        total += g.size();
    }

    std::vector<std::pair<double, std::size_t>> pool;
    pool.reserve(total);
    std::size_t idx = 0;
    for (const auto& g : groups) {
        for (double x : g) pool.emplace_back(x, idx++);
    }
    std::vector<double> ranks;
    const double tie_term = mid_ranks(pool, ranks);

    const double n = static_cast<double>(total);
    const double tie_correction = 1.0 - tie_term / (n * n * n - n);
    if (tie_correction <= 0.0) {
        throw DegenerateInputError("Kruskal-Wallis: all values identical");
    }

    double h = 0.0;
    idx = 0;
    for (const auto& g : groups) {
        double rank_sum = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) rank_sum += ranks[idx++];
        h += rank_sum * rank_sum / static_cast<double>(g.size());
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);
    h /= tie_correction;

    KruskalResult r;
    r.h = h;
    r.df = static_cast<int>(groups.size()) - 1;
    r.p = chi_square_sf(h, r.df);
    return r;
}

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw NoDataError("rank-sum test needs non-empty samples");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());

    std::vector<std::pair<double, std::size_t>> pool;
    pool.reserve(a.size() + b.size());
    std::size_t idx = 0;
    for (double x : a) pool.emplace_back(x, idx++);
    for (double x : b) pool.emplace_back(x, idx++);
    std::vector<double> ranks;
    const double tie_term = mid_ranks(pool, ranks);

    double rank_sum_a = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) rank_sum_a += ranks[k];
    const double u = rank_sum_a - na * (na + 1.0) / 2.0;

    RankSumResult r;
    r.w = u;
    const double n = na + nb;
    const double mean_u = na * nb / 2.0;
    const double var_u = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var_u <= 0.0) {
        r.p = 1.0;  // every pooled value tied: no evidence either way
        return r;
    }
    // continuity correction of 0.5 toward the mean
    const double z = (std::abs(u - mean_u) - 0.5) / std::sqrt(var_u);
    r.p = std::min(1.0, 2.0 * normal_sf(std::max(z, 0.0)));
    return r;
}

std::vector<double> fdr_adjust(std::span<const double> pvals) {
    for (double p : pvals) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DomainError("p-value " + std::to_string(p) + " outside [0,1]");
        }
    }
    const std::size_t n = pvals.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return pvals[i] < pvals[j]; });

    // step-up: walk from the largest p down, enforcing monotonicity
    std::vector<double> adjusted(n, 0.0);
    double running_min = 1.0;
    for (std::size_t k = n; k-- > 0;) {
        const double scaled =
            pvals[order[k]] * static_cast<double>(n) / static_cast<double>(k + 1);
        running_min = std::min(running_min, std::min(scaled, 1.0));
        adjusted[order[k]] = running_min;
    }
    return adjusted;
}

void SymptomTally::add(int symptom, Severity severity) {
    if (symptom < 0 || symptom >= kSymptoms) {
        throw DomainError("symptom index " + std::to_string(symptom) + " outside 0..5");
    }
    ++counts[symptom][static_cast<int>(severity)];
}

std::int64_t SymptomTally::total(Severity severity) const {
    std::int64_t sum = 0;
    for (const auto& row : counts) sum += row[static_cast<int>(severity)];
    return sum;
}

std::int64_t SymptomTally::total() const {
    std::int64_t sum = 0;
    for (int s = 0; s < 4; ++s) sum += total(static_cast<Severity>(s));
    return sum;
}

}  // namespace align360
