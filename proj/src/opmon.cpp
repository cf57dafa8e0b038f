#include "lnratio/opmon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "lnratio/format.hpp"
#include "lnratio/quadrature.hpp"

namespace lnratio {

namespace {

using Dense = std::vector<cplx>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_dim(int n) {
  if (n < 1 || n > kMaxMatrixDim) throw DomainError("matrix dimension must be in [1, 8]");
}

// Haar-like random unitary: Gram-Schmidt on a complex Gaussian matrix, columns stored as vectors.
std::vector<std::vector<cplx>> random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<std::vector<cplx>> q(static_cast<std::size_t>(n));
  for (auto& col : q) {
    while (true) {
      col.assign(static_cast<std::size_t>(n), cplx{});
      for (auto& v : col) v = cplx(gauss(rng), gauss(rng));
      for (const auto* prev = q.data(); prev != &col; ++prev) {
        for (int pass = 0; pass < 2; ++pass) {
          cplx dot{};
          for (int k = 0; k < n; ++k) dot += std::conj((*prev)[k]) * col[k];
          for (int k = 0; k < n; ++k) col[k] -= dot * (*prev)[k];
        }
      }
      double norm = 0.0;
      for (const auto& v : col) norm += std::norm(v);
      norm = std::sqrt(norm);
      if (norm > 1e-8) {
        for (auto& v : col) v /= norm;
        break;
      }
    }
  }
  return q;
}

}  // namespace

HermitianMatrix::HermitianMatrix(int n) : n_(n) {
  check_dim(n);
  a_.assign(static_cast<std::size_t>(n * n), cplx{});
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  HermitianMatrix m(static_cast<int>(d.size()));
  for (int j = 0; j < m.n_; ++j) m.a_[m.index(j, j)] = d[static_cast<std::size_t>(j)];
  return m;
}

HermitianMatrix HermitianMatrix::from_general(int n, const std::vector<cplx>& g) {
  HermitianMatrix m(n);
  if (g.size() != static_cast<std::size_t>(n * n)) throw DomainError("matrix size mismatch");
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      m.set(j, k, 0.5 * (g[m.index(j, k)] + std::conj(g[m.index(k, j)])));
    }
  }
  return m;
}

void HermitianMatrix::set(int j, int k, cplx v) {
  if (j == k) {
    a_[index(j, j)] = v.real();
  } else {
    a_[index(j, k)] = v;
    a_[index(k, j)] = std::conj(v);
  }
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  if (o.n_ != n_) throw DomainError("matrix size mismatch");
  HermitianMatrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  if (o.n_ != n_) throw DomainError("matrix size mismatch");
  HermitianMatrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

double HermitianMatrix::norm_inf() const {
  double best = 0.0;
  for (int j = 0; j < n_; ++j) {
    double row = 0.0;
    for (int k = 0; k < n_; ++k) row += std::abs(a_[index(j, k)]);
    best = std::max(best, row);
  }
  return best;
}

EigenDecomposition hermitian_eig(const HermitianMatrix& m) {
  const int n = m.dim();
  Dense a = m.data();
  Dense v(a.size(), cplx{});
  auto at = [n](Dense& x, int j, int k) -> cplx& { return x[static_cast<std::size_t>(j * n + k)]; };
  for (int j = 0; j < n; ++j) at(v, j, j) = 1.0;

  double total = 0.0;
  for (const auto& x : a) total += std::norm(x);
  const double threshold = 1e-30 * total;

  EigenDecomposition out;
  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (j != k) off += std::norm(at(a, j, k));
      }
    }
    if (off <= threshold) {
      out.sweeps = sweep;
      converged = true;
      break;
    }
    if (sweep == kJacobiSweeps) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = at(a, p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // Phase e^{-i arg a_pq} on column q makes the 2x2 block real symmetric.
        const cplx phase = std::conj(apq) / r;
        const double app = at(a, p, p).real();
        const double aqq = at(a, q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * phase;
        const cplx jqq = c * phase;
        for (int k = 0; k < n; ++k) {
          const cplx kp = at(a, k, p);
          const cplx kq = at(a, k, q);
          at(a, k, p) = kp * jpp + kq * jqp;
          at(a, k, q) = kp * jpq + kq * jqq;
          const cplx vp = at(v, k, p);
          const cplx vq = at(v, k, q);
          at(v, k, p) = vp * jpp + vq * jqp;
          at(v, k, q) = vp * jpq + vq * jqq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx pk = at(a, p, k);
          const cplx qk = at(a, q, k);
          at(a, p, k) = std::conj(jpp) * pk + std::conj(jqp) * qk;
          at(a, q, k) = std::conj(jpq) * pk + std::conj(jqq) * qk;
        }
        at(a, p, q) = at(a, q, p) = 0.0;
        at(a, p, p) = at(a, p, p).real();
        at(a, q, q) = at(a, q, q).real();
      }
    }
  }
  if (!converged) throw ConvergenceError("Hermitian eigensolver did not converge in 30 sweeps");

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return at(a, x, x).real() > at(a, y, y).real(); });
  for (int idx : order) {
    out.values.push_back(at(a, idx, idx).real());
    std::vector<cplx> col(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) col[static_cast<std::size_t>(k)] = at(v, k, idx);
    out.vectors.push_back(std::move(col));
  }
  return out;
}

HermitianMatrix from_eigen(const std::vector<std::vector<cplx>>& u, const std::vector<double>& d) {
  const int n = static_cast<int>(d.size());
  if (u.size() != d.size()) throw DomainError("eigenvector count mismatch");
  std::vector<cplx> g(static_cast<std::size_t>(n * n), cplx{});
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      cplx acc{};
      for (int m = 0; m < n; ++m) {
        acc += u[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(m)] *
               std::conj(u[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)]);
      }
      g[static_cast<std::size_t>(j * n + k)] = acc;
    }
  }
  return HermitianMatrix::from_general(n, g);
}

ScalarFunction scalar_function(FunctionId fn) {
  return {std::string(to_string(fn)), [fn](double x) { return eval_real(fn, x); }};
}

ScalarFunction square_function() {
  return {"square", [](double x) { return x * x; }};
}

ScalarFunction parse_scalar_function(std::string_view name) {
  if (name == "square") return square_function();
  if (auto fn = parse_function_id(name)) return scalar_function(*fn);
  throw DomainError("unknown function '" + std::string(name) + "'");
}

HermitianMatrix matrix_apply(const ScalarFunction& fn, const HermitianMatrix& a) {
  const auto e = hermitian_eig(a);
  std::vector<double> fd;
  for (double lambda : e.values) {
    if (!(lambda > 0.0)) throw DomainError("matrix_apply needs a positive spectrum");
    fd.push_back(fn.f(lambda));
  }
  return from_eigen(e.vectors, fd);
}

HermitianMatrix matrix_apply(FunctionId fn, const HermitianMatrix& a) {
  return matrix_apply(scalar_function(fn), a);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

std::pair<HermitianMatrix, HermitianMatrix> sample_ordered_pair(int n, std::uint64_t seed,
                                                                SpectrumRange range,
                                                                bool clustered) {
  check_dim(n);
  if (!(range.lo > 0.0) || !(range.hi > range.lo)) {
    throw DomainError("spectrum range must satisfy 0 < lo < hi");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> da(static_cast<std::size_t>(n));
  for (auto& x : da) x = range.lo + (range.hi - range.lo) * unit(rng);
  if (clustered && n >= 2) da[1] = std::clamp(da[0] + 1e-6 * unit(rng), range.lo, range.hi);
  std::vector<double> dc(static_cast<std::size_t>(n));
  for (auto& x : dc) x = range.hi * unit(rng);
  const auto u = random_unitary(n, rng);
  const auto v = random_unitary(n, rng);
  const HermitianMatrix a = from_eigen(u, da);
  return {a, a + from_eigen(v, dc)};
}

OperatorMonotoneReport check_operator_monotone(const ScalarFunction& fn, int n, int trials,
                                               std::uint64_t seed, double tol,
                                               SpectrumRange range) {
  check_dim(n);
  if (trials < 1) throw DomainError("at least one trial is required");
  OperatorMonotoneReport r;
  r.seed = seed;
  r.summary.property = PropertyKind::OPERATOR_MONOTONE;
  r.summary.fn = fn.name;
  r.summary.grid = "dim=" + std::to_string(n) + ",trials=" + std::to_string(trials) +
                   ",seed=" + std::to_string(seed);
  for (int i = 0; i < trials; ++i) {
    LoewnerTrial t;
    t.index = i;
    t.dim = n;
    t.seed = trial_seed(seed, static_cast<std::uint64_t>(i));
    std::mt19937_64 pick(t.seed ^ 0x5bd1e995ULL);
    t.clustered = std::uniform_real_distribution<double>(0.0, 1.0)(pick) < kClusteredFraction;
    try {
      const auto [a, b] = sample_ordered_pair(n, t.seed, range, t.clustered);
      const auto fb = matrix_apply(fn, b);
      const auto diff = hermitian_eig(fb - matrix_apply(fn, a));
      const auto eb = hermitian_eig(fb);
      t.min_eig = diff.values.back();
      t.norm_fB = std::max(std::abs(eb.values.front()), std::abs(eb.values.back()));
      t.pass = t.min_eig >= -tol * t.norm_fB;
    } catch (const std::exception& e) {
      t.error = e.what();
      t.pass = false;
    }
    ++r.summary.points_checked;
    if (!t.pass) {
      const double violation =
          t.error.empty() ? -t.min_eig / std::max(t.norm_fB, 1e-300) : std::numeric_limits<double>::infinity();
      if (r.summary.pass || violation > r.summary.worst_violation) {
        r.summary.worst_violation = violation;
        r.summary.witness = Witness{static_cast<double>(i), 0.0, n, t.min_eig};
      }
      r.summary.pass = false;
    }
    r.trials.push_back(std::move(t));
  }
  return r;
}

std::string trials_csv(const OperatorMonotoneReport& r) {
  std::ostringstream out;
  out << "trial,dim,seed,min_eig,norm_fB,pass\n";
  for (const auto& t : r.trials) {
    out << t.index << ',' << t.dim << ',' << t.seed << ',' << format_double(t.min_eig) << ','
        << format_double(t.norm_fB) << ',' << (t.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace lnratio
