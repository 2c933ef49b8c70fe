#include "geodtn/sweep.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>
#include <thread>

#include "geodtn/analysis.h"
#include "geodtn/errors.h"
#include "geodtn/events.h"

namespace geodtn {

namespace {

struct Cell {
    std::string value_label;
    SchemeId scheme = SchemeId::DD;
    uint64_t seed = 0;
    ScenarioConfig config;
};

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

struct MetricColumn {
    const char* name;
    std::optional<double> (*get)(const RunMetrics&);
};

constexpr MetricColumn kColumns[] = {
    {"generated", [](const RunMetrics& m) { return std::optional(double(m.generated)); }},
    {"delivered", [](const RunMetrics& m) { return std::optional(double(m.delivered)); }},
    {"delivery_ratio", [](const RunMetrics& m) { return m.delivery_ratio; }},
    {"avg_latency_s", [](const RunMetrics& m) { return m.avg_latency_s; }},
    {"transmissions", [](const RunMetrics& m) { return std::optional(double(m.transmissions)); }},
    {"overhead_ratio", [](const RunMetrics& m) { return m.overhead_ratio; }},
    {"extra_copies", [](const RunMetrics& m) { return std::optional(double(m.extra_copies)); }},
    {"evictions", [](const RunMetrics& m) { return std::optional(double(m.evictions)); }},
    {"expiries", [](const RunMetrics& m) { return std::optional(double(m.expiries)); }},
};

// The headline metrics worth a paired comparison in the report.
constexpr const char* kTrendMetrics[] = {"delivery_ratio", "avg_latency_s", "overhead_ratio"};

const MetricColumn& column(const char* name) {
    for (const auto& c : kColumns) {
        if (std::string_view(c.name) == name) return c;
    }
    throw SimError("unknown metric column");
}

}  // namespace

SweepOutputs run_sweep(const SweepSpec& spec, int jobs) {
    spec.validate();

    std::vector<Cell> cells;
    for (const auto& value : spec.values) {
        const ScenarioConfig at_value = apply_override(spec.base, spec.parameter, value);
        for (SchemeId scheme : spec.schemes) {
            for (uint64_t seed : spec.seeds) {
                Cell c;
                c.value_label = join(value);
                c.scheme = scheme;
                c.seed = seed;
                c.config = at_value;
                c.config.scheme = scheme;
                c.config.seed = seed;
                cells.push_back(std::move(c));
            }
        }
    }

    std::vector<RunMetrics> results(cells.size());
    std::vector<char> failed(cells.size(), 0);
    std::vector<std::string> reasons(cells.size());
    std::atomic<size_t> cursor{0};
    auto work = [&] {
        for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= cells.size()) return;
            try {
                results[i] = run(cells[i].config).metrics;
            } catch (const std::exception& e) {
                failed[i] = 1;
                reasons[i] = e.what();
            }
        }
    };
    const int workers = std::max(1, std::min(jobs, static_cast<int>(cells.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < cells.size(); ++i) {
        if (failed[i]) {
            throw SimError("sweep run (" + spec.parameter + " = " + cells[i].value_label + ", " +
                           scheme_name(cells[i].scheme) + ", seed " +
                           std::to_string(cells[i].seed) + ") failed: " + reasons[i]);
        }
    }

    SweepOutputs out;

    std::ostringstream runs;
    runs << "parameter,value," << metrics_csv_header() << '\n';
    for (size_t i = 0; i < cells.size(); ++i) {
        runs << spec.parameter << ',' << cells[i].value_label << ','
             << metrics_csv_row(results[i]) << '\n';
    }
    out.runs_csv = runs.str();

    const size_t per_group = spec.seeds.size();
    std::ostringstream agg;
    agg << "parameter,value,scheme,metric,n,mean,ci_half\n";
    size_t base = 0;
    for (const auto& value : spec.values) {
        for (SchemeId scheme : spec.schemes) {
            for (const auto& col : kColumns) {
                std::vector<double> samples;
                for (size_t s = 0; s < per_group; ++s) {
                    if (auto v = col.get(results[base + s])) samples.push_back(*v);
                }
                agg << spec.parameter << ',' << join(value) << ',' << scheme_name(scheme) << ','
                    << col.name << ',' << samples.size() << ',';
                if (!samples.empty()) {
                    double sum = 0.0;
                    for (double v : samples) sum += v;
                    agg << format_double(sum / static_cast<double>(samples.size()));
                }
                agg << ',';
                if (samples.size() >= 2) agg << format_double(mean_ci(samples).half_width);
                agg << '\n';
            }
            base += per_group;
        }
    }
    out.aggregate_csv = agg.str();

    std::ostringstream rep;
    rep << "paired trend report\n";
    rep << "parameter: " << spec.parameter << "\n";
    rep << "seeds: " << spec.seeds.size() << "\n";
    if (spec.schemes.size() < 2) {
        rep << "\nsingle scheme; nothing to compare\n";
    }
    for (size_t vi = 0; vi < spec.values.size(); ++vi) {
        if (spec.schemes.size() < 2) break;
        rep << "\n" << spec.parameter << " = " << join(spec.values[vi]) << "\n";
        const size_t value_base = vi * spec.schemes.size() * per_group;
        for (size_t i = 0; i < spec.schemes.size(); ++i) {
            for (size_t j = i + 1; j < spec.schemes.size(); ++j) {
                for (const char* metric : kTrendMetrics) {
                    const auto& col = column(metric);
                    std::vector<double> a, b;
                    for (size_t s = 0; s < per_group; ++s) {
                        const auto va = col.get(results[value_base + i * per_group + s]);
                        const auto vb = col.get(results[value_base + j * per_group + s]);
                        if (va && vb) {
                            a.push_back(*va);
                            b.push_back(*vb);
                        }
                    }
                    rep << "  " << metric << "  " << scheme_name(spec.schemes[i]) << " vs "
                        << scheme_name(spec.schemes[j]) << "  ";
                    if (a.size() < 5) {
                        rep << "insufficient paired runs (n=" << a.size() << ")\n";
                        continue;
                    }
                    const TrendVerdict v = trend_test(
                        a, b, [&] {
                            double d = 0.0;
                            for (size_t s = 0; s < a.size(); ++s) d += a[s] - b[s];
                            return d >= 0.0 ? Direction::Greater : Direction::Less;
                        }());
                    rep << "n=" << v.n << "  mean " << format_double(v.mean_a) << " vs "
                        << format_double(v.mean_b) << "  diff " << format_double(v.mean_diff)
                        << "  ci [" << format_double(v.ci_lo) << ", " << format_double(v.ci_hi)
                        << "]  ";
                    if (v.confirmed()) {
                        rep << "separated: "
                            << scheme_name(v.mean_diff > 0.0 ? spec.schemes[i] : spec.schemes[j])
                            << " higher\n";
                    } else {
                        rep << "not separated\n";
                    }
                }
            }
        }
    }
    out.trend_report = rep.str();

    return out;
}

void write_sweep_outputs(const SweepOutputs& outputs, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto write = [&](const char* name, const std::string& text) {
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw SimError("cannot write " + path.string());
        f << text;
    };
    write("runs.csv", outputs.runs_csv);
    write("aggregate.csv", outputs.aggregate_csv);
    write("trend_report.txt", outputs.trend_report);
}

}  // namespace geodtn
