#pragma once

#include <string>
#include <vector>

#include "geodtn/engine.h"

namespace geodtn {

struct AnalyticParams {
    int k = 2;            // nodes in the network, destination included
    int l = 1;            // copy budget
    double emt = 1.0;     // expected meeting time, seconds
    double lambda = 1.0;  // relaying possibility in [0, 1]

    void validate() const;  // throws ConfigError
};

// The printed delivery-probability identity chains two inequivalent
// expressions; both are exposed. The oracle of record is `as_printed`, the
// right-hand composition over the per-copy relay probability.
struct DeliveryProbability {
    double per_copy = 0.0;     // lambda * 1 * (1/(K-1))^2
    double as_printed = 0.0;   // 1 - (1-per_copy)^(L-1) / (K-1)
    double alternative = 0.0;  // 1 - (1-per_copy)^L
};

DeliveryProbability delivery_probability(const AnalyticParams& p);

// Source spray-and-wait delay: sum_{H=1}^{L-1} EMT/(K-H) + (K-L)/(K-1) * EW
// with EW = EMT/L. Total over emt >= 0.
double delay_s_saw(const AnalyticParams& p);

// Same with each distribution term divided by lambda.
// Throws DegenerateLambdaError when lambda = 0.
double delay_s_tbgr(const AnalyticParams& p);

// Binary-split variant over H_max = ceil(log2 L) rounds:
// sum_{H=1}^{H_max} EMT/(lambda * 2^(H-1) * (K - 2^(H-1))) + (K-L)/(K-1) * EW.
double delay_b_tbgr(const AnalyticParams& p);

struct EmtEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int samples = 0;
};

// Empirical mean first-meeting time of two nodes walking the config's RWP
// field, averaged over `samples` independently seeded trials. Checked in
// slots of config.slot; trials are cut off after a step cap far beyond any
// sane meeting time. Throws ConfigError for non-RWP configs.
EmtEstimate estimate_emt(const ScenarioConfig& config, int samples);

enum class Direction { Greater, Less };

struct TrendVerdict {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double mean_diff = 0.0;  // a - b
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    int n = 0;
    std::string verdict;  // confirmed | not separated | reversed

    bool confirmed() const { return verdict == "confirmed"; }
};

// Paired comparison of per-seed samples: 95% CI on mean(a - b), verdict
// against the predicted direction. Throws InsufficientRunsError when fewer
// than 5 pairs (or mismatched lengths).
TrendVerdict trend_test(const std::vector<double>& a, const std::vector<double>& b,
                        Direction predicted);

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;
    int n = 0;
};

// Sample mean with a 95% t-interval half-width; needs at least 2 samples.
MeanCi mean_ci(const std::vector<double>& xs);

// Two-sided 95% Student-t critical value, conservative between table rows.
double t_critical_95(int df);

}  // namespace geodtn
