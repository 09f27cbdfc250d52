#include <doctest.h>

#include <cmath>

#include "helmfield/rng.hpp"
#include "helmfield/sparse_coding.hpp"

using namespace helmfield;

namespace {

// Independent oracle: cyclic coordinate descent on the same objective.
// Each scalar subproblem min |r - d x|^2 + alpha |x| has the closed form
// x = u max(0, 1 - alpha / (2|u|)) / ||d||^2 with u = d^H r_without_l.
CVector cd_lasso(const CMatrix& design, const CVector& obs, double alpha,
                 int sweeps) {
  CVector x = CVector::Zero(design.cols());
  CVector r = obs;
  for (int s = 0; s < sweeps; ++s) {
    for (Eigen::Index l = 0; l < design.cols(); ++l) {
      const auto d = design.col(l);
      const double dn = d.squaredNorm();
      if (dn == 0.0) continue;
      const Complex u = d.dot(r) + dn * x[l];
      const double mag = std::abs(u);
      Complex x_new(0.0, 0.0);
      if (2.0 * mag > alpha) x_new = u * (1.0 - alpha / (2.0 * mag)) / dn;
      r += d * (x[l] - x_new);
      x[l] = x_new;
    }
  }
  return x;
}

// Distance to the subgradient optimality condition 0 in 2 D^H (D x - p) + alpha g.
double kkt_residual(const SparseProblem& problem, const CVector& x) {
  const CVector g =
      2.0 * (problem.design.adjoint() * (problem.design * x - problem.observations));
  double sq = 0.0;
  for (Eigen::Index l = 0; l < x.size(); ++l) {
    if (std::abs(x[l]) > 0.0) {
      const Complex v = g[l] + problem.alpha * x[l] / std::abs(x[l]);
      sq += std::norm(v);
    } else {
      const double slack = std::max(0.0, std::abs(g[l]) - problem.alpha);
      sq += slack * slack;
    }
  }
  return std::sqrt(sq);
}

SparseProblem random_problem(Rng& rng, int m, int l, double alpha) {
  CMatrix design(m, l);
  CVector obs(m);
  for (int i = 0; i < m; ++i) {
    obs[i] = Complex(rng.normal(), rng.normal());
    for (int j = 0; j < l; ++j)
      design(i, j) = Complex(rng.normal(), rng.normal());
  }
  return {design, obs, alpha};
}

}  // namespace

TEST_CASE("objective evaluates the data + l1 terms") {
  Rng rng(4);
  const SparseProblem problem = random_problem(rng, 4, 3, 0.7);
  const CVector zero = CVector::Zero(3);
  CHECK(objective(problem, zero) ==
        doctest::Approx(problem.observations.squaredNorm()).epsilon(1e-15));

  CVector x(3);
  for (int j = 0; j < 3; ++j) x[j] = Complex(rng.normal(), rng.normal());
  // Naive summation oracle.
  double data = 0.0;
  for (int i = 0; i < 4; ++i) {
    Complex acc = problem.observations[i];
    for (int j = 0; j < 3; ++j) acc -= problem.design(i, j) * x[j];
    data += std::norm(acc);
  }
  double l1 = 0.0;
  for (int j = 0; j < 3; ++j) l1 += std::abs(x[j]);
  CHECK(objective(problem, x) ==
        doctest::Approx(data + problem.alpha * l1).epsilon(1e-12));

  CHECK_THROWS_AS(objective(problem, CVector::Zero(2)), std::invalid_argument);
}

TEST_CASE("zero observations give exactly zero coefficients") {
  Rng rng(9);
  SparseProblem problem = random_problem(rng, 3, 3, 0.5);
  problem.observations.setZero();
  const Coefficients c = sparse_code(problem);
  CHECK(c.values.norm() == 0.0);
  CHECK(c.objective == 0.0);
  CHECK(c.converged);
}

TEST_CASE("identity design with alpha 0 recovers the observations") {
  SparseProblem problem{CMatrix::Identity(3, 3), CVector(3), 0.0};
  problem.observations << Complex(1, 2), Complex(-0.5, 0.25), Complex(0, -3);
  const Coefficients c = sparse_code(problem, 1e-12, 10000);
  CHECK((c.values - problem.observations).norm() <= 1e-6);
  CHECK(c.objective <= 1e-10);
}

TEST_CASE("scalar instance matches a complex-plane grid search") {
  SparseProblem problem{CMatrix::Identity(1, 1), CVector(1), 1.0};
  problem.observations << Complex(2.0, 0.0);
  const Coefficients c = sparse_code(problem, 1e-14, 20000);

  // Dense grid search over the complex plane, then a refinement pass.
  double best = 1e300;
  Complex best_x;
  for (int pass = 0; pass < 2; ++pass) {
    const double radius = pass == 0 ? 3.0 : 0.01;
    const Complex centre = pass == 0 ? Complex(0, 0) : best_x;
    for (int a = -100; a <= 100; ++a) {
      for (int b = -100; b <= 100; ++b) {
        const Complex x = centre + Complex(a * radius / 100.0, b * radius / 100.0);
        const double f = objective(problem, (CVector(1) << x).finished());
        if (f < best) {
          best = f;
          best_x = x;
        }
      }
    }
  }
  CHECK(std::abs(best_x - Complex(1.5, 0.0)) <= 2e-4);
  CHECK(std::abs(c.values[0] - Complex(1.5, 0.0)) <= 1e-9);
  CHECK(c.objective == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("objective is non-increasing along the iteration budget") {
  Rng rng(31);
  const SparseProblem problem = random_problem(rng, 5, 4, 1.0);
  double prev = objective(problem, CVector::Zero(4));
  for (int budget = 1; budget <= 25; ++budget) {
    const Coefficients c = sparse_code(problem, 1e-16, budget);
    CHECK(c.objective <= prev + 1e-9);
    prev = c.objective;
  }
}

TEST_CASE("returned objective never exceeds the zero-vector objective") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const SparseProblem problem = random_problem(rng, 4, 6, 0.5 + trial * 0.3);
    const Coefficients c = sparse_code(problem, 1e-10, 2000);
    CHECK(c.objective <= problem.observations.squaredNorm() + 1e-12);
    CHECK(c.objective ==
          doctest::Approx(objective(problem, c.values)).epsilon(1e-10));
  }
}

TEST_CASE("solutions satisfy the subgradient certificate on small instances") {
  // The decrease-based stop leaves an objective gap of about tol * f, and
  // for a quadratic-plus-l1 objective that translates to a subgradient
  // residual of order sqrt(tol); the certificate is asserted at that scale.
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const SparseProblem problem =
        random_problem(rng, 2 + trial % 3, 2 + (trial / 2) % 3, 0.8);
    const double tol = 1e-14;
    const Coefficients c = sparse_code(problem, tol, 400000);
    CHECK(kkt_residual(problem, c.values) <= 100.0 * std::sqrt(tol));
  }
}

TEST_CASE("l1 mass shrinks as alpha grows") {
  Rng rng(15);
  const SparseProblem base = random_problem(rng, 5, 4, 0.0);
  double prev_mass = 1e300;
  for (double alpha : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    SparseProblem problem = base;
    problem.alpha = alpha;
    const Coefficients c = sparse_code(problem, 1e-12, 50000);
    const double mass = c.values.cwiseAbs().sum();
    CHECK(mass <= prev_mass + 1e-8);
    prev_mass = mass;
  }
}

TEST_CASE("matches the coordinate-descent oracle on random instances") {
  Rng rng(100);
  const double alphas[] = {0.1, 1.0, 10.0};
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform_below(5));
    const int l = 1 + static_cast<int>(rng.uniform_below(5));
    const SparseProblem problem = random_problem(rng, m, l, alphas[trial % 3]);
    const Coefficients c = sparse_code(problem, 1e-12, 50000);
    const CVector oracle = cd_lasso(problem.design, problem.observations,
                                    problem.alpha, 4000);
    const double f_oracle = objective(problem, oracle);
    CHECK(c.objective <= f_oracle * (1.0 + 1e-6) + 1e-12);
    CHECK(std::abs(c.objective - f_oracle) <=
          1e-6 * std::max(1.0, f_oracle));
  }
}

TEST_CASE("non-finite inputs raise NumericError") {
  SparseProblem problem{CMatrix::Identity(2, 2), CVector(2), 1.0};
  problem.observations << Complex(1, 0),
      Complex(std::numeric_limits<double>::quiet_NaN(), 0);
  CHECK_THROWS_AS(sparse_code(problem), NumericError);
}

TEST_CASE("warm starts never hurt") {
  Rng rng(55);
  const SparseProblem problem = random_problem(rng, 5, 5, 0.6);
  const Coefficients cold = sparse_code(problem, 1e-12, 20000);
  const Coefficients warm = sparse_code(problem, 1e-12, 20000, cold.values);
  CHECK(warm.objective <= cold.objective + 1e-12);

  // A bad warm start is ignored in favour of zero.
  CVector awful = CVector::Constant(5, Complex(100.0, -100.0));
  const Coefficients guarded = sparse_code(problem, 1e-12, 1, awful);
  CHECK(guarded.objective <= problem.observations.squaredNorm() + 1e-12);
}
