#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "locsom/error.hpp"
#include "locsom/harness.hpp"

namespace locsom {

/// A sweep as described by a JSON config file.
///
/// Recognized keys (anything else is rejected by name):
///   dataset       string or array of dataset names
///   variant       "fnnsom" | "nnsom" | "classical"
///   map_sides     array of lattice side lengths
///   grid          {param, lo, hi, count} geometric grid, or {param, values: [...]}
///   init          "sic" | "ric" or an array of both
///   iterations, factor, repeats, seed, record_every, jobs
///   sigma, ema_decay, cluster_sigma, points, tangle_factor
///   output        {csv, traces}
struct SweepConfig {
    SweepAxes axes;
    std::size_t jobs = 1;
    double tangle_factor = 2.0;
    std::filesystem::path csv_path = "sweep_results.csv";
    std::optional<std::filesystem::path> traces_path;
};

/// Throws ConfigError with the offending key or line/column in the message.
SweepConfig parse_sweep_config(const std::string& text);

SweepConfig load_sweep_config(const std::filesystem::path& path);

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace locsom
