#include "lnratio/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace lnratio::series {

namespace {

double at(std::span<const double> a, std::size_t k) { return k < a.size() ? a[k] : 0.0; }

}  // namespace

std::vector<double> log_of(std::span<const double> p, std::size_t terms) {
  if (p.empty() || p[0] != 1.0) {
    throw std::invalid_argument("series::log_of needs a unit constant term");
  }
  // k L_k = k p_k - sum_{j=1}^{k-1} j L_j p_{k-j}
  std::vector<double> out(terms, 0.0);
  for (std::size_t k = 1; k < terms; ++k) {
    double acc = static_cast<double>(k) * at(p, k);
    for (std::size_t j = 1; j < k; ++j) {
      acc -= static_cast<double>(j) * out[j] * at(p, k - j);
    }
    out[k] = acc / static_cast<double>(k);
  }
  return out;
}

std::vector<double> divide(std::span<const double> a, std::span<const double> b, std::size_t terms) {
  if (b.empty() || b[0] == 0.0) {
    throw std::invalid_argument("series::divide needs a nonzero leading divisor coefficient");
  }
  std::vector<double> q(terms, 0.0);
  for (std::size_t k = 0; k < terms; ++k) {
    double acc = at(a, k);
    for (std::size_t j = 1; j <= k; ++j) {
      acc -= q[k - j] * at(b, j);
    }
    q[k] = acc / b[0];
  }
  return q;
}

std::vector<double> shift(std::span<const double> a, double w0, std::size_t terms) {
  // Repeated synthetic division (Horner) by (w - w0).
  std::vector<double> work(a.begin(), a.end());
  std::vector<double> out(terms, 0.0);
  const std::size_t n = work.size();
  for (std::size_t k = 0; k < terms && k < n; ++k) {
    for (std::size_t i = n - 1; i > k; --i) {
      work[i - 1] += w0 * work[i];
    }
    out[k] = work[k];
  }
  return out;
}

std::vector<double> log_ratio_numerator(std::size_t terms) {
  std::vector<double> out(terms);
  for (std::size_t n = 0; n < terms; ++n) {
    out[n] = (n % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(n + 1);
  }
  return out;
}

std::vector<double> log_ratio_denominator(std::size_t terms) {
  // ln((1+x^2)/(1+x)) at x = 1 + w equals ln(1 + w + w^2/2) - ln(1 + w/2).
  const double quad[] = {1.0, 1.0, 0.5};
  const double lin[] = {1.0, 0.5};
  const auto a = log_of(quad, terms + 1);
  const auto b = log_of(lin, terms + 1);
  std::vector<double> out(terms);
  for (std::size_t n = 0; n < terms; ++n) {
    out[n] = a[n + 1] - b[n + 1];
  }
  return out;
}

}  // namespace lnratio::series
