#pragma once

#include <vector>

#include "lnratio/core_eval.hpp"

namespace lnratio {

inline constexpr int kMaxJetOrder = 12;

/// Truncated Taylor expansion sum_k c_k (x - center)^k, c_k = f^(k)(center)/k!.
class TaylorJet {
 public:
  TaylorJet() = default;
  TaylorJet(double center, std::vector<double> coeffs);

  static TaylorJet constant(double center, double value, int order);
  /// The identity function x.
  static TaylorJet variable(double center, int order);

  double center() const noexcept { return center_; }
  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const noexcept { return c_; }
  double operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  /// k-th derivative, k! c_k.
  double derivative(int k) const;

  /// Jet of f' (shifts coefficients; order drops by one).
  TaylorJet derivative_jet() const;

  TaylorJet& operator+=(const TaylorJet& o);
  TaylorJet& operator-=(const TaylorJet& o);
  TaylorJet& operator*=(const TaylorJet& o);
  TaylorJet& operator/=(const TaylorJet& o);

  friend TaylorJet operator+(TaylorJet a, const TaylorJet& b) { return a += b; }
  friend TaylorJet operator-(TaylorJet a, const TaylorJet& b) { return a -= b; }
  friend TaylorJet operator*(TaylorJet a, const TaylorJet& b) { return a *= b; }
  friend TaylorJet operator/(TaylorJet a, const TaylorJet& b) { return a /= b; }
  friend TaylorJet operator+(TaylorJet a, double s);
  friend TaylorJet operator*(TaylorJet a, double s);
  friend TaylorJet operator*(double s, TaylorJet a) { return a * s; }
  TaylorJet operator-() const;

  bool loss_of_significance = false;

 private:
  double center_ = 1.0;
  std::vector<double> c_;
};

/// ln f; requires f(center) > 0.
TaylorJet log(const TaylorJet& f);
/// ln(1 + f); requires 1 + f(center) > 0.
TaylorJet log1p(const TaylorJet& f);
TaylorJet exp(const TaylorJet& f);
TaylorJet pow(const TaylorJet& f, int n);
/// f^alpha for f(center) > 0.
TaylorJet pow(const TaylorJet& f, double alpha);

/// Distance from 1 below which h and H jets are built from re-expanded series.
inline constexpr double kJetSeriesRadius = 0.5;

/// Jet of fn at x > 0 to order N <= 12. Sets loss_of_significance when
/// |c_N| x^N exceeds 1e12 |c_0|.
TaylorJet taylor_jet(FunctionId fn, double x, int order);

}  // namespace lnratio
