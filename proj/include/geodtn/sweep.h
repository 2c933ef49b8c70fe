#pragma once

#include <string>

#include "geodtn/config.h"

namespace geodtn {

struct SweepOutputs {
    std::string runs_csv;       // one row per (value, scheme, seed) run
    std::string aggregate_csv;  // per (value, scheme, metric): n, mean, 95% CI half-width
    std::string trend_report;   // paired scheme comparisons per value point
};

// Executes |values| x |schemes| x |seeds| runs, value-major, on up to `jobs`
// worker threads. Every run is self-contained, so the rendered bytes are
// independent of the thread count. Throws SimError naming the first failing
// run, if any.
SweepOutputs run_sweep(const SweepSpec& spec, int jobs);

// Writes runs.csv, aggregate.csv and trend_report.txt under out_dir,
// creating the directory if needed.
void write_sweep_outputs(const SweepOutputs& outputs, const std::string& out_dir);

}  // namespace geodtn
