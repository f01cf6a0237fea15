#pragma once

#include <span>
#include <vector>

namespace locsom {

/// Linear-interpolated quantile (type 7) of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);

inline double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

/// Interquartile range.
double iqr(std::vector<double> values);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

}  // namespace locsom
