#include "helmfield/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace helmfield {

namespace {

void check_same_grid(const PressureField& truth, const PressureField& estimate) {
  if (!(truth.grid == estimate.grid))
    throw std::invalid_argument("metrics: fields live on different grids");
  if (truth.values.size() != estimate.values.size())
    throw std::invalid_argument("metrics: field length mismatch");
}

}  // namespace

double nmse_db(const PressureField& truth, const PressureField& estimate) {
  check_same_grid(truth, estimate);
  if (truth.freq_hz != estimate.freq_hz)
    throw std::invalid_argument("nmse_db: fields are at different frequencies");
  const double denom = truth.values.squaredNorm();
  if (denom == 0.0) throw std::invalid_argument("nmse_db: zero truth field");
  const double num = (truth.values - estimate.values).squaredNorm();
  if (num == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(num / denom);
}

double ncc(const PressureField& truth, const PressureField& estimate) {
  check_same_grid(truth, estimate);
  const double tn = truth.values.norm();
  const double en = estimate.values.norm();
  if (tn == 0.0 || en == 0.0)
    throw std::invalid_argument("ncc: zero-norm field");
  return std::abs(estimate.values.dot(truth.values)) / (en * tn);
}

double ncc_literal(const PressureField& truth, const PressureField& estimate) {
  check_same_grid(truth, estimate);
  const double tn2 = truth.values.squaredNorm();
  const double en2 = estimate.values.squaredNorm();
  if (tn2 == 0.0 || en2 == 0.0)
    throw std::invalid_argument("ncc_literal: zero-norm field");
  return std::abs(estimate.values.dot(truth.values)) / (en2 * tn2);
}

Score score(const PressureField& truth, const PressureField& estimate) {
  return {nmse_db(truth, estimate), ncc(truth, estimate)};
}

}  // namespace helmfield
