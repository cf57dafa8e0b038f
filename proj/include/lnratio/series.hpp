#pragma once

#include <span>
#include <vector>

// Truncated power-series helpers shared by the z = 1 evaluation path and the
// Taylor-jet arithmetic.
namespace lnratio::series {

/// Coefficients of ln(p(w)) truncated to `terms` coefficients; requires p[0] == 1.
std::vector<double> log_of(std::span<const double> p, std::size_t terms);

/// Coefficients of a(w)/b(w) truncated to `terms` coefficients; requires b[0] != 0.
std::vector<double> divide(std::span<const double> a, std::span<const double> b, std::size_t terms);

/// Re-expands sum_n a_n w^n about w0: returns c_k with sum_n a_n (w0 + e)^n = sum_k c_k e^k,
/// for k < `terms`.
std::vector<double> shift(std::span<const double> a, double w0, std::size_t terms);

/// Series of ln(x)/(x-1) in powers of w = x - 1.
std::vector<double> log_ratio_numerator(std::size_t terms);

/// Series of ln((1+x^2)/(1+x))/(x-1) in powers of w = x - 1.
std::vector<double> log_ratio_denominator(std::size_t terms);

}  // namespace lnratio::series
