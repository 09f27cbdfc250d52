#ifndef HELMFIELD_SPARSE_CODING_HPP
#define HELMFIELD_SPARSE_CODING_HPP

#include <optional>

#include "helmfield/common.hpp"

namespace helmfield {

/// min_x ||observations - design x||^2 + alpha * sum_l |x_l|
struct SparseProblem {
  CMatrix design;        // M x L
  CVector observations;  // length M
  double alpha = 0.0;
};

struct Coefficients {
  CVector values;
  double objective = 0.0;
  int iterations_used = 0;
  bool converged = false;
};

double objective(const SparseProblem& problem, const CVector& x);

/// Complex soft threshold: z * max(0, 1 - tau/|z|).
Complex soft_threshold(Complex z, double tau);

/// Accelerated proximal gradient with a monotone safeguard (the iterate
/// never worsens the objective, so traces are non-increasing). Step is
/// the inverse Lipschitz constant of the smooth gradient, 1/(2 lambda_max),
/// with lambda_max of design^H design found by power iteration; the
/// corresponding threshold per step is alpha/(2 lambda_max). Starts from
/// the better of warm_start and zero. Stops when the relative objective
/// decrease falls below tol.
Coefficients sparse_code(const SparseProblem& problem, double tol = 1e-8,
                         int max_iters = 5000,
                         const std::optional<CVector>& warm_start = std::nullopt);

}  // namespace helmfield

#endif
