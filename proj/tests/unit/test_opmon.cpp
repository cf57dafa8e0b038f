#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "lnratio/opmon.hpp"

using namespace lnratio;

namespace {

HermitianMatrix random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<cplx> m(static_cast<std::size_t>(n * n));
  for (auto& v : m) v = cplx(d(rng), d(rng));
  return HermitianMatrix::from_general(n, m);
}

double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  double m = 0.0;
  for (int j = 0; j < a.dim(); ++j)
    for (int k = 0; k < a.dim(); ++k) m = std::max(m, std::abs(a(j, k) - b(j, k)));
  return m;
}

}  // namespace

TEST_SUITE("opmon") {
  TEST_CASE("small examples") {
    const auto d = hermitian_eig(HermitianMatrix::diagonal({1.0, 3.0}));
    CHECK(d.values[0] == doctest::Approx(3.0));
    CHECK(d.values[1] == doctest::Approx(1.0));
    HermitianMatrix a(2);
    a.set(0, 0, 2.0);
    a.set(1, 1, 2.0);
    a.set(0, 1, 1.0);
    const auto e = hermitian_eig(a);
    CHECK(e.values[0] == doctest::Approx(3.0));
    CHECK(e.values[1] == doctest::Approx(1.0));
    CHECK(std::abs(std::abs(e.vectors[0][0]) - std::sqrt(0.5)) < 1e-14);
  }

  TEST_CASE("reconstruction and unitarity") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const int n = 6;
      const auto a = random_hermitian(n, s);
      const auto e = hermitian_eig(a);
      CHECK(e.sweeps <= kJacobiSweeps);
      CHECK(max_abs_diff(from_eigen(e.vectors, e.values), a) <= 1e-12 * a.norm_inf());
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          cplx dot = 0.0;
          for (int i = 0; i < n; ++i) dot += std::conj(e.vectors[j][i]) * e.vectors[k][i];
          CHECK(std::abs(dot - (j == k ? 1.0 : 0.0)) < 1e-13);
        }
      }
      for (int k = 1; k < n; ++k) CHECK(e.values[k - 1] >= e.values[k]);
    }
  }

  TEST_CASE("eigenvalues agree with an independent solver") {
    for (int n = 1; n <= kMaxMatrixDim; ++n) {
      const auto a = random_hermitian(n, 100 + n);
      Eigen::MatrixXcd m(n, n);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(j, k) = a(j, k);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
      const auto e = hermitian_eig(a);
      for (int k = 0; k < n; ++k) CHECK(e.values[k] == doctest::Approx(solver.eigenvalues()(n - 1 - k)).epsilon(1e-12));
    }
  }

  TEST_CASE("matrix functions") {
    const auto d = HermitianMatrix::diagonal({0.5, 2.0});
    const auto f = matrix_apply(FunctionId::H, d);
    CHECK(f(0, 0).real() == doctest::Approx(eval_real(FunctionId::H, 0.5)));
    CHECK(f(1, 1).real() == doctest::Approx(eval_real(FunctionId::H, 2.0)));
    CHECK(std::abs(f(0, 1)) < 1e-15);
    const auto a = random_hermitian(4, 9);
    const auto sq = matrix_apply(square_function(), a + HermitianMatrix::diagonal({10, 10, 10, 10}));
    const auto b = a + HermitianMatrix::diagonal({10, 10, 10, 10});
    HermitianMatrix prod(4);
    for (int j = 0; j < 4; ++j)
      for (int k = j; k < 4; ++k) {
        cplx s = 0.0;
        for (int i = 0; i < 4; ++i) s += b(j, i) * b(i, k);
        prod.set(j, k, s);
      }
    CHECK(max_abs_diff(sq, prod) < 1e-11 * prod.norm_inf());
    CHECK_THROWS_AS(matrix_apply(FunctionId::H, HermitianMatrix::diagonal({1.0, -1.0})), DomainError);
  }

  TEST_CASE("unitary invariance") {
    const auto a = random_hermitian(3, 5) + HermitianMatrix::diagonal({8, 8, 8});
    const auto fa = matrix_apply(FunctionId::H, a);
    const auto ea = hermitian_eig(a);
    const auto efa = hermitian_eig(fa);
    for (int k = 0; k < 3; ++k)
      CHECK(efa.values[2 - k] == doctest::Approx(eval_real(FunctionId::H, ea.values[k])).epsilon(1e-12));
  }

  TEST_CASE("seeds and sampling") {
    CHECK(trial_seed(42, 0) == trial_seed(42, 0));
    CHECK(trial_seed(42, 0) != trial_seed(42, 1));
    CHECK(trial_seed(42, 1) != trial_seed(43, 1));
    const auto [a, b] = sample_ordered_pair(4, 42);
    const auto [a2, b2] = sample_ordered_pair(4, 42);
    CHECK(max_abs_diff(a, a2) == 0.0);
    CHECK(hermitian_eig(b - a).values.back() >= -1e-12);
    CHECK(hermitian_eig(a).values.back() >= 0.05 - 1e-12);
    const auto [c, d] = sample_ordered_pair(3, 7, {}, true);
    const auto ev = hermitian_eig(c).values;
    bool close = false;
    for (int i = 1; i < 3; ++i) close |= ev[i - 1] - ev[i] <= 1e-6 + 1e-12;
    CHECK(close);
    (void)d;
  }

  TEST_CASE("loewner order checks") {
    const auto h = check_operator_monotone(scalar_function(FunctionId::X2H), 3, 40, 42);
    CHECK(h.summary.pass);
    CHECK(h.trials.size() == 40);
    const auto again = check_operator_monotone(scalar_function(FunctionId::X2H), 3, 40, 42);
    for (std::size_t i = 0; i < h.trials.size(); ++i) CHECK(h.trials[i].min_eig == again.trials[i].min_eig);
    // Every scalar pair a <= b is ordered for a monotone function.
    CHECK(check_operator_monotone(square_function(), 1, 50, 3).summary.pass);
    const auto sq = check_operator_monotone(square_function(), 2, 200, 20260101);
    CHECK_FALSE(sq.summary.pass);
    REQUIRE(sq.summary.witness.has_value());
    CHECK(sq.summary.witness->value < 0.0);
    const std::string csv = trials_csv(h);
    CHECK(csv.rfind("trial,dim,seed,min_eig,norm_fB,pass\n", 0) == 0);
    CHECK(parse_scalar_function("square").name == "square");
    CHECK_THROWS_AS(parse_scalar_function("cube"), DomainError);
  }
}
