#include "helmfield/sparse_coding.hpp"

#include <cmath>
#include <stdexcept>

#include "helmfield/rng.hpp"

namespace helmfield {

namespace {

void check_problem(const SparseProblem& problem) {
  if (problem.design.rows() < 1 || problem.design.cols() < 1)
    throw std::invalid_argument("sparse_code: empty design matrix");
  if (problem.observations.size() != problem.design.rows())
    throw std::invalid_argument("sparse_code: observation length mismatch");
  if (problem.alpha < 0.0)
    throw std::invalid_argument("sparse_code: alpha must be >= 0");
  if (!problem.design.allFinite() || !problem.observations.allFinite() ||
      !std::isfinite(problem.alpha))
    throw NumericError("sparse_code: non-finite input");
}

// Largest eigenvalue of design^H design by power iteration. The start
// vector comes from a fixed seed so results are reproducible.
double largest_gram_eigenvalue(const CMatrix& design) {
  const auto cols = design.cols();
  Rng rng(0x5eed);
  CVector v(cols);
  for (Eigen::Index i = 0; i < cols; ++i) v[i] = {rng.normal(), rng.normal()};
  double norm = v.norm();
  if (norm == 0.0) return 0.0;
  v /= norm;

  double lambda = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    CVector w = design.adjoint() * (design * v);
    const double wn = w.norm();
    if (wn <= 1e-300) return 0.0;
    const double next = v.dot(w).real();
    w /= wn;
    v.swap(w);
    if (iter > 2 && std::abs(next - lambda) <= 1e-13 * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::max(lambda, 0.0);
}

}  // namespace

double objective(const SparseProblem& problem, const CVector& x) {
  if (x.size() != problem.design.cols())
    throw std::invalid_argument("objective: coefficient length mismatch");
  const double data = (problem.observations - problem.design * x).squaredNorm();
  return data + problem.alpha * x.cwiseAbs().sum();
}

Complex soft_threshold(Complex z, double tau) {
  const double mag = std::abs(z);
  if (mag <= tau) return {0.0, 0.0};
  return z * (1.0 - tau / mag);
}

Coefficients sparse_code(const SparseProblem& problem, double tol,
                         int max_iters,
                         const std::optional<CVector>& warm_start) {
  check_problem(problem);
  if (!(tol > 0.0)) throw std::invalid_argument("sparse_code: tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("sparse_code: max_iters must be >= 1");

  const auto num_coeffs = problem.design.cols();
  const CVector zero = CVector::Zero(num_coeffs);

  const double lambda_max = largest_gram_eigenvalue(problem.design);
  if (lambda_max <= 1e-300) {
    // Zero design: the data term is constant, so x = 0 is optimal for any
    // alpha >= 0.
    return {zero, objective(problem, zero), 0, true};
  }
  // Tiny inflation guards against power iteration stopping a hair below
  // the true eigenvalue, which would make the step exceed 1/Lipschitz.
  const double step = 1.0 / (2.0 * lambda_max * (1.0 + 1e-9));
  const double tau = problem.alpha * step;

  CVector x_prev = zero;
  double f_prev = objective(problem, zero);
  if (warm_start && warm_start->size() == num_coeffs && warm_start->allFinite()) {
    const double f_warm = objective(problem, *warm_start);
    if (f_warm < f_prev) {
      x_prev = *warm_start;
      f_prev = f_warm;
    }
  }

  CVector y = x_prev;
  CVector x_curr = x_prev;
  double f_curr = f_prev;
  double t_k = 1.0;
  int iters = 0;
  bool converged = false;
  bool restarted = true;  // y == x_curr initially

  // FISTA with function-value adaptive restart. A candidate that worsens
  // the objective resets the momentum; a plain proximal step from the
  // incumbent that still fails to improve means we sit on a fixed point.
  for (int iter = 1; iter <= max_iters; ++iter) {
    iters = iter;
    const CVector grad = 2.0 * (problem.design.adjoint() *
                                (problem.design * y - problem.observations));
    CVector z = y - step * grad;
    for (Eigen::Index l = 0; l < num_coeffs; ++l)
      z[l] = soft_threshold(z[l], tau);
    const double f_z = objective(problem, z);

    if (f_z > f_curr) {
      if (restarted) {
        converged = true;
        break;
      }
      y = x_curr;
      t_k = 1.0;
      restarted = true;
      continue;
    }

    const double decrease = f_curr - f_z;
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_k * t_k));
    y = z + ((t_k - 1.0) / t_next) * (z - x_curr);
    x_curr = std::move(z);
    f_curr = f_z;
    t_k = t_next;
    restarted = false;

    if (decrease <= tol * std::max(f_curr, 1e-300)) {
      converged = true;
      break;
    }
  }

  return {x_curr, f_curr, iters, converged};
}

}  // namespace helmfield
