#include "lnratio/jet.hpp"

#include <algorithm>
#include <cmath>

#include "lnratio/series.hpp"

namespace lnratio {

namespace {

constexpr std::size_t kSeriesTerms = 200;

void check_compatible(const TaylorJet& a, const TaylorJet& b) {
  if (a.center() != b.center()) throw DomainError("jets with different centers");
}

std::vector<double> truncated(const std::vector<double>& c, std::size_t n) {
  std::vector<double> out(n, 0.0);
  std::copy_n(c.begin(), std::min(n, c.size()), out.begin());
  return out;
}

struct HJets {
  TaylorJet h;
  TaylorJet H;
};

HJets h_jets(double x, int order) {
  const auto n = static_cast<std::size_t>(order + 1);
  if (std::abs(x - 1.0) < kJetSeriesRadius) {
    // ln x/(x-1) and ln((1+x^2)/(1+x))/(x-1) re-expanded about w0 = x - 1.
    const double w0 = x - 1.0;
    const auto p = series::shift(series::log_ratio_numerator(kSeriesTerms), w0, n);
    const auto d = series::shift(series::log_ratio_denominator(kSeriesTerms), w0, n);
    const TaylorJet pj(x, p);
    const TaylorJet dj(x, d);
    return {pj / dj, (pj - dj) / dj};
  }
  const TaylorJet X = TaylorJet::variable(x, order);
  const TaylorJet one = TaylorJet::constant(x, 1.0, order);
  // ln((1+x^2)/(1+x)) = ln(1 + x(x-1)/(1+x)); ln(x(1+x)/(1+x^2)) = ln(1 + (x-1)/(1+x^2)).
  const TaylorJet den = log1p(X * (X - one) / (X + 1.0));
  const TaylorJet num = log1p((X - one) / (X * X + 1.0));
  return {log(X) / den, num / den};
}

}  // namespace

TaylorJet::TaylorJet(double center, std::vector<double> coeffs)
    : center_(center), c_(std::move(coeffs)) {
  if (c_.empty()) throw DomainError("a jet needs at least one coefficient");
}

TaylorJet TaylorJet::constant(double center, double value, int order) {
  std::vector<double> c(static_cast<std::size_t>(order + 1), 0.0);
  c[0] = value;
  return {center, c};
}

TaylorJet TaylorJet::variable(double center, int order) {
  std::vector<double> c(static_cast<std::size_t>(order + 1), 0.0);
  c[0] = center;
  if (order >= 1) c[1] = 1.0;
  return {center, c};
}

double TaylorJet::derivative(int k) const {
  return std::tgamma(k + 1.0) * (*this)[k];
}

TaylorJet TaylorJet::derivative_jet() const {
  if (order() < 1) throw DomainError("derivative of an order-0 jet");
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  TaylorJet out(center_, d);
  out.loss_of_significance = loss_of_significance;
  return out;
}

TaylorJet& TaylorJet::operator+=(const TaylorJet& o) {
  check_compatible(*this, o);
  const std::size_t n = std::min(c_.size(), o.c_.size());
  c_.resize(n);
  for (std::size_t k = 0; k < n; ++k) c_[k] += o.c_[k];
  loss_of_significance = loss_of_significance || o.loss_of_significance;
  return *this;
}

TaylorJet& TaylorJet::operator-=(const TaylorJet& o) { return *this += -o; }

TaylorJet& TaylorJet::operator*=(const TaylorJet& o) {
  check_compatible(*this, o);
  const std::size_t n = std::min(c_.size(), o.c_.size());
  std::vector<double> r(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j <= k; ++j) r[k] += c_[j] * o.c_[k - j];
  }
  c_ = std::move(r);
  loss_of_significance = loss_of_significance || o.loss_of_significance;
  return *this;
}

TaylorJet& TaylorJet::operator/=(const TaylorJet& o) {
  check_compatible(*this, o);
  const std::size_t n = std::min(c_.size(), o.c_.size());
  c_ = series::divide(truncated(c_, n), truncated(o.c_, n), n);
  loss_of_significance = loss_of_significance || o.loss_of_significance;
  return *this;
}

TaylorJet operator+(TaylorJet a, double s) {
  a.c_[0] += s;
  return a;
}

TaylorJet operator*(TaylorJet a, double s) {
  for (double& v : a.c_) v *= s;
  return a;
}

TaylorJet TaylorJet::operator-() const { return *this * -1.0; }

TaylorJet log(const TaylorJet& f) {
  if (!(f[0] > 0.0)) throw DomainError("log of a jet needs a positive value");
  // ln f = ln f0 + ln(f/f0)
  std::vector<double> unit(f.coeffs());
  const double f0 = unit[0];
  for (double& v : unit) v /= f0;
  auto g = series::log_of(unit, unit.size());
  g[0] = std::log(f0);
  TaylorJet out(f.center(), g);
  out.loss_of_significance = f.loss_of_significance;
  return out;
}

TaylorJet log1p(const TaylorJet& f) {
  const double f0 = f[0];
  if (!(f0 > -1.0)) throw DomainError("log1p of a jet needs a value above -1");
  std::vector<double> unit(f.coeffs());
  const double base = 1.0 + f0;
  unit[0] = 1.0;
  for (std::size_t k = 1; k < unit.size(); ++k) unit[k] /= base;
  auto g = series::log_of(unit, unit.size());
  g[0] = std::log1p(f0);
  TaylorJet out(f.center(), g);
  out.loss_of_significance = f.loss_of_significance;
  return out;
}

TaylorJet exp(const TaylorJet& f) {
  // g' = f' g  =>  k g_k = sum_{j=1}^k j f_j g_{k-j}
  const auto& c = f.coeffs();
  std::vector<double> g(c.size(), 0.0);
  g[0] = std::exp(c[0]);
  for (std::size_t k = 1; k < c.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * c[j] * g[k - j];
    g[k] = acc / static_cast<double>(k);
  }
  TaylorJet out(f.center(), g);
  out.loss_of_significance = f.loss_of_significance;
  return out;
}

TaylorJet pow(const TaylorJet& f, int n) {
  if (n < 0) return TaylorJet::constant(f.center(), 1.0, f.order()) / pow(f, -n);
  TaylorJet result = TaylorJet::constant(f.center(), 1.0, f.order());
  TaylorJet base = f;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

TaylorJet pow(const TaylorJet& f, double alpha) {
  if (alpha == std::round(alpha) && std::abs(alpha) < 64) return pow(f, static_cast<int>(alpha));
  return exp(log(f) * alpha);
}

TaylorJet taylor_jet(FunctionId fn, double x, int order) {
  if (!(x > 0.0)) throw DomainError("taylor_jet needs x > 0");
  if (order < 0 || order > kMaxJetOrder) throw DomainError("taylor_jet order must be in [0, 12]");
  const auto hj = h_jets(x, order);
  const TaylorJet X = TaylorJet::variable(x, order);
  const TaylorJet one = TaylorJet::constant(x, 1.0, order);
  TaylorJet out;
  switch (fn) {
    case FunctionId::h: out = hj.h; break;
    case FunctionId::H: out = hj.H; break;
    case FunctionId::G:
    case FunctionId::XH: out = X * hj.H; break;
    case FunctionId::X2H: out = X * X * hj.H; break;
    case FunctionId::INV_H: out = one / hj.H; break;
    case FunctionId::INV_XH: out = one / (X * hj.H); break;
    case FunctionId::INV_Z2H:
    case FunctionId::INV_X2H: out = one / (X * X * hj.H); break;
  }
  const double c0 = std::abs(out[0]);
  const double amplified = std::abs(out[order]) * std::pow(x, order);
  if (amplified > 1e12 * c0) out.loss_of_significance = true;
  return out;
}

}  // namespace lnratio
