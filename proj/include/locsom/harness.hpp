#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locsom/datasets.hpp"
#include "locsom/metrics.hpp"
#include "locsom/rates.hpp"
#include "locsom/som.hpp"

namespace locsom {

struct TrialConfig {
    DatasetSpec dataset;
    std::size_t map_side = 10;
    RatePolicy policy = RatePolicy::fnnsom(0.15);
    InitMode init = InitMode::Random;
    std::size_t iterations = 3000;
    /// Samples per iteration = factor * unit count.
    std::size_t factor = 10;
    std::uint64_t seed = 0;
    std::size_t record_every = 50;
    /// Position within a sweep; informational.
    std::size_t cell = 0;
    std::size_t repeat = 0;

    std::size_t units() const noexcept { return map_side * map_side; }
    std::size_t total_samples() const noexcept { return iterations * factor * units(); }

    /// Throws InvalidInput on out-of-range fields.
    void validate() const;
};

struct TrialResult {
    TrialConfig config;
    MapAlfaTrace alfa_trace;
    double final_alfa = 0.0;
    double final_quantization = 0.0;
    std::size_t dim = 0;
    /// Row-major, units x dim.
    std::vector<double> final_weights;
    /// Present for 2D maps only.
    std::optional<std::size_t> edge_crossings;
    double wall_time_seconds = 0.0;
    std::size_t samples_processed = 0;
};

/// `count` values from lo to hi with a constant ratio.
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

/// Same policy with its swept parameter (c_q, l_zeta or initial rate) replaced.
RatePolicy with_param(RatePolicy policy, double value);

/// Trains one map. A_t is recorded after every `record_every` iterations
/// and after the last iteration. Only the sample loop is timed.
TrialResult run_trial(const TrialConfig& config);

/// Trains a map of `config.map_side`^2 units on exactly `samples` samples
/// (ignoring iterations and factor) and returns the sample-loop wall time
/// in seconds. Used for scaling measurements at a fixed budget.
double time_fixed_budget(const TrialConfig& config, std::size_t samples);

/// Grid axes of a sweep. Cells enumerate datasets, then sides, then
/// parameter values, then init modes; repeats are innermost.
struct SweepAxes {
    std::vector<DatasetSpec> datasets;
    std::vector<std::size_t> map_sides;
    RatePolicy policy = RatePolicy::fnnsom(0.15);
    std::vector<double> param_values;
    std::vector<InitMode> inits{InitMode::Random};
    std::size_t iterations = 3000;
    std::size_t factor = 10;
    std::size_t record_every = 50;
    std::size_t repeats = 20;
    std::uint64_t base_seed = 1;
};

struct SweepPlan {
    std::vector<TrialConfig> trials;
    std::size_t cells = 0;
    std::size_t repeats = 0;
};

/// Expands the grid; trial seeds are derive_seed(base_seed, cell, repeat).
SweepPlan expand_plan(const SweepAxes& axes);

struct TrialOutcome {
    TrialConfig config;
    std::optional<TrialResult> result;
    std::string error;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every trial on up to `parallelism` OpenMP threads. Outcomes come
/// back in plan order; a failing trial records its error and the sweep
/// carries on.
std::vector<TrialOutcome> run_sweep(const SweepPlan& plan, std::size_t parallelism,
                                    const ProgressFn& progress = {});

/// One row of the results CSV.
struct ResultRow {
    std::string dataset;
    std::size_t map_side = 0;
    std::string variant;
    std::string param_name;
    double param_value = 0.0;
    std::string init_mode;
    std::uint64_t seed = 0;
    std::size_t repeat = 0;
    double final_alfa = 0.0;
    double final_quantization = 0.0;
    std::optional<std::size_t> edge_crossings;
    double wall_time_seconds = 0.0;
    std::size_t samples_processed = 0;

    bool operator==(const ResultRow&) const = default;
};

ResultRow to_row(const TrialResult& r);

/// Header line of the results CSV, without newline.
const std::string& results_csv_header();

/// Writes the header and one row per result. Throws IoError.
void persist_results(std::span<const TrialResult> results, const std::filesystem::path& csv_path);

/// Companion trace file: [{config, trace: [[iter, A], ...], dim, final_weights}, ...].
void persist_traces(std::span<const TrialResult> results, const std::filesystem::path& json_path);

/// Parses a results CSV. Throws ParseError on schema mismatch, IoError.
std::vector<ResultRow> read_results_csv(const std::filesystem::path& csv_path);

}  // namespace locsom
