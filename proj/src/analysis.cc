#include "geodtn/analysis.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "geodtn/errors.h"
#include "geodtn/mobility.h"

namespace geodtn {

void AnalyticParams::validate() const {
    if (l < 1) throw ConfigError("copy budget must be at least 1");
    if (k <= l) throw ConfigError("node count must exceed the copy budget");
    if (emt < 0.0) throw ConfigError("expected meeting time must be non-negative");
    if (lambda < 0.0 || lambda > 1.0) throw ConfigError("lambda must lie in [0, 1]");
}

DeliveryProbability delivery_probability(const AnalyticParams& p) {
    p.validate();
    const double km1 = static_cast<double>(p.k - 1);
    DeliveryProbability out;
    out.per_copy = p.lambda * 1.0 / (km1 * km1);
    out.as_printed = 1.0 - std::pow(1.0 - out.per_copy, p.l - 1) / km1;
    out.alternative = 1.0 - std::pow(1.0 - out.per_copy, p.l);
    return out;
}

namespace {

double saw_tail(const AnalyticParams& p) {
    const double ew = p.emt / p.l;
    return (static_cast<double>(p.k - p.l) / (p.k - 1)) * ew;
}

}  // namespace

double delay_s_saw(const AnalyticParams& p) {
    p.validate();
    double sum = 0.0;
    for (int h = 1; h <= p.l - 1; ++h) sum += p.emt / (p.k - h);
    return sum + saw_tail(p);
}

double delay_s_tbgr(const AnalyticParams& p) {
    p.validate();
    if (p.lambda == 0.0) throw DegenerateLambdaError();
    double sum = 0.0;
    for (int h = 1; h <= p.l - 1; ++h) sum += p.emt / (p.lambda * (p.k - h));
    return sum + saw_tail(p);
}

double delay_b_tbgr(const AnalyticParams& p) {
    p.validate();
    if (p.lambda == 0.0) throw DegenerateLambdaError();
    int h_max = 0;
    while ((1 << h_max) < p.l) ++h_max;  // ceil(log2 L), 0 for L = 1
    double sum = 0.0;
    for (int h = 1; h <= h_max; ++h) {
        const double holders = static_cast<double>(1 << (h - 1));
        sum += p.emt / (p.lambda * holders * (p.k - holders));
    }
    return sum + saw_tail(p);
}

EmtEstimate estimate_emt(const ScenarioConfig& config, int samples) {
    if (config.mobility != MobilityKind::Rwp) {
        throw ConfigError("meeting-time estimation expects an RWP config");
    }
    if (samples < 1) throw ConfigError("need at least one sample");
    constexpr int64_t kStepCap = 4'000'000;
    Rng master(config.seed);
    std::vector<double> times;
    times.reserve(samples);
    for (int s = 0; s < samples; ++s) {
        Rng rng = master.spawn(static_cast<uint64_t>(s) + 1);
        MobilityState a = rwp_initial_state(config.area, config.speed, rng);
        MobilityState b = rwp_initial_state(config.area, config.speed, rng);
        double met = 0.0;
        if (distance(a.pos, b.pos) > config.range) {
            for (int64_t k = 1; k <= kStepCap; ++k) {
                rwp_step(a, config.slot, config.area, config.speed, config.wait, rng);
                rwp_step(b, config.slot, config.area, config.speed, config.wait, rng);
                met = static_cast<double>(k) * config.slot;
                if (distance(a.pos, b.pos) <= config.range) break;
            }
        }
        times.push_back(met);
    }
    double sum = 0.0;
    for (double t : times) sum += t;
    const double mean = sum / samples;
    double var = 0.0;
    for (double t : times) var += (t - mean) * (t - mean);
    EmtEstimate out;
    out.mean = mean;
    out.samples = samples;
    out.std_error = samples > 1 ? std::sqrt(var / (samples - 1)) / std::sqrt(samples) : 0.0;
    return out;
}

double t_critical_95(int df) {
    static constexpr std::array<double, 30> kTable = {
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
        2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
        2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
    if (df < 1) throw ConfigError("t critical value needs at least 1 degree of freedom");
    if (df <= 30) return kTable[df - 1];
    if (df < 40) return kTable[29];
    if (df < 60) return 2.021;
    if (df < 120) return 2.000;
    return 1.980;
}

TrendVerdict trend_test(const std::vector<double>& a, const std::vector<double>& b,
                        Direction predicted) {
    if (a.size() != b.size()) throw InsufficientRunsError("paired samples differ in length");
    const int n = static_cast<int>(a.size());
    if (n < 5) throw InsufficientRunsError("need at least 5 paired runs");
    TrendVerdict v;
    v.n = n;
    double sa = 0.0, sb = 0.0, sd = 0.0;
    for (int i = 0; i < n; ++i) {
        sa += a[i];
        sb += b[i];
        sd += a[i] - b[i];
    }
    v.mean_a = sa / n;
    v.mean_b = sb / n;
    v.mean_diff = sd / n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = a[i] - b[i] - v.mean_diff;
        var += d * d;
    }
    const double se = std::sqrt(var / (n - 1)) / std::sqrt(static_cast<double>(n));
    const double half = t_critical_95(n - 1) * se;
    v.ci_lo = v.mean_diff - half;
    v.ci_hi = v.mean_diff + half;
    const bool above = v.ci_lo > 0.0;
    const bool below = v.ci_hi < 0.0;
    if (predicted == Direction::Greater) {
        v.verdict = above ? "confirmed" : below ? "reversed" : "not separated";
    } else {
        v.verdict = below ? "confirmed" : above ? "reversed" : "not separated";
    }
    return v;
}

MeanCi mean_ci(const std::vector<double>& xs) {
    const int n = static_cast<int>(xs.size());
    if (n < 2) throw InsufficientRunsError("confidence interval needs at least 2 samples");
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / (n - 1)) / std::sqrt(static_cast<double>(n));
    return {mean, t_critical_95(n - 1) * se, n};
}

}  // namespace geodtn
