#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lnratio/analysis.hpp"
#include "lnratio/core_eval.hpp"

namespace lnratio {

inline constexpr int kMaxMatrixDim = 8;

/// Dense Hermitian matrix, row-major, n <= 8.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n = 1);
  static HermitianMatrix diagonal(const std::vector<double>& d);
  /// Hermitian part (M + M^H)/2 of a general row-major matrix.
  static HermitianMatrix from_general(int n, const std::vector<cplx>& m);

  int dim() const noexcept { return n_; }
  cplx operator()(int j, int k) const { return a_[index(j, k)]; }
  /// Sets a_jk and a_kj = conj(a_jk); diagonal entries keep only the real part.
  void set(int j, int k, cplx v);

  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator+(const HermitianMatrix& o) const;
  /// Largest absolute row sum.
  double norm_inf() const;
  const std::vector<cplx>& data() const noexcept { return a_; }

 private:
  std::size_t index(int j, int k) const { return static_cast<std::size_t>(j * n_ + k); }
  int n_;
  std::vector<cplx> a_;
};

struct EigenDecomposition {
  /// Descending.
  std::vector<double> values;
  /// Column-major eigenvectors: vectors[k] is the k-th column.
  std::vector<std::vector<cplx>> vectors;
  int sweeps = 0;
};

inline constexpr int kJacobiSweeps = 30;

/// Cyclic complex Jacobi rotations. Throws ConvergenceError after 30 sweeps.
EigenDecomposition hermitian_eig(const HermitianMatrix& a);

/// U diag(d) U^H, Hermitized.
HermitianMatrix from_eigen(const std::vector<std::vector<cplx>>& u, const std::vector<double>& d);

/// A real function on (0, inf) applied through the spectral decomposition.
struct ScalarFunction {
  std::string name;
  std::function<double(double)> f;
};

ScalarFunction scalar_function(FunctionId fn);
/// x^2, the non-operator-monotone control.
ScalarFunction square_function();
/// FunctionId names plus "square".
ScalarFunction parse_scalar_function(std::string_view name);

/// U f(D) U^H. Throws DomainError if an eigenvalue is not positive.
HermitianMatrix matrix_apply(const ScalarFunction& fn, const HermitianMatrix& a);
HermitianMatrix matrix_apply(FunctionId fn, const HermitianMatrix& a);

/// Seed of trial `index` derived from the run seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

struct SpectrumRange {
  double lo = 0.05;
  double hi = 20.0;
};

/// A has spectrum in [lo, hi]; B = A + V diag(d) V^H with d in [0, hi], so A <= B and
/// the spectrum of B lies in (0, 2 hi]. With `clustered`, two eigenvalues of A lie within 1e-6.
std::pair<HermitianMatrix, HermitianMatrix> sample_ordered_pair(int n, std::uint64_t seed,
                                                                SpectrumRange range = {},
                                                                bool clustered = false);

struct LoewnerTrial {
  int index = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  bool clustered = false;
  double min_eig = 0.0;  // smallest eigenvalue of f(B) - f(A)
  double norm_fB = 0.0;  // spectral norm of f(B)
  bool pass = false;
  std::string error;
};

struct OperatorMonotoneReport {
  PropertyReport summary;
  std::uint64_t seed = 0;
  std::vector<LoewnerTrial> trials;
};

inline constexpr double kLoewnerTol = 1e-8;
inline constexpr double kClusteredFraction = 0.05;

/// Trial i uses trial_seed(seed, i); pass iff min_eig >= -tol * norm_fB.
/// The witness records x = trial index, k = dimension, value = min_eig.
OperatorMonotoneReport check_operator_monotone(const ScalarFunction& fn, int n, int trials,
                                               std::uint64_t seed, double tol = kLoewnerTol,
                                               SpectrumRange range = {});

/// CSV with header trial,dim,seed,min_eig,norm_fB,pass.
std::string trials_csv(const OperatorMonotoneReport& r);

}  // namespace lnratio
