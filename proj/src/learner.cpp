#include "helmfield/learner.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/SparseCholesky>

namespace helmfield {

namespace {

// Inner sparse-coding budget per outer iteration; warm starts make a
// short leash sufficient.
constexpr double kInnerTol = 1e-8;
constexpr int kInnerIters = 500;
constexpr double kUnusedAtomThreshold = 1e-12;

void check_inputs(const MeasurementSet& measurements, const Grid2D& grid,
                  double target_freq_hz, const LearnConfig& cfg) {
  if (measurements.values.size() != measurements.mask.size())
    throw std::invalid_argument("learn: measurement value/mask length mismatch");
  const auto& indices = measurements.mask.indices;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= grid.point_count())
      throw std::out_of_range("learn: mask index outside grid");
    if (i > 0 && indices[i] <= indices[i - 1])
      throw std::invalid_argument(
          "learn: mask indices must be strictly increasing");
  }
  if (!(target_freq_hz >= cfg.band_lo_hz && target_freq_hz <= cfg.band_hi_hz))
    throw std::invalid_argument("learn: target frequency outside the band");
  if (cfg.outer_iters < 1)
    throw std::invalid_argument("learn: outer_iters must be >= 1");
  if (cfg.alpha < 0.0 || cfg.beta < 0.0)
    throw std::invalid_argument("learn: alpha and beta must be >= 0");
  if (!measurements.values.allFinite())
    throw NumericError("learn: non-finite measurements");
}

double penalty_sum(const std::vector<HelmholtzOperator>& operators,
                   const CMatrix& atoms) {
  double sum = 0.0;
  for (std::size_t l = 0; l < operators.size(); ++l)
    sum += residual_norm_sq(operators[l], atoms.col(static_cast<int>(l)));
  return sum;
}

}  // namespace

double full_objective(const MeasurementSet& measurements, const Dictionary& dict,
                      const CVector& x, const LearnConfig& cfg,
                      const std::vector<HelmholtzOperator>& operators) {
  if (x.size() != dict.atoms.cols())
    throw std::invalid_argument("full_objective: coefficient length mismatch");
  if (operators.size() != static_cast<std::size_t>(dict.atoms.cols()))
    throw std::invalid_argument("full_objective: one operator per atom required");
  const CMatrix measured = measured_rows(dict, measurements.mask);
  const double data = (measurements.values - measured * x).squaredNorm();
  return data + cfg.alpha * x.cwiseAbs().sum() +
         cfg.beta * penalty_sum(operators, dict.atoms);
}

LearnResult learn(const MeasurementSet& measurements, const Grid2D& grid,
                  double target_freq_hz, const LearnConfig& cfg) {
  const std::vector<double> freqs =
      atom_frequencies(cfg.band_lo_hz, cfg.band_hi_hz, cfg.num_atoms);
  return learn(measurements, grid, target_freq_hz, cfg,
               sample_baseline_dictionary(grid, freqs, cfg.init_seed));
}

LearnResult learn(const MeasurementSet& measurements, const Grid2D& grid,
                  double target_freq_hz, const LearnConfig& cfg,
                  const Dictionary& init_dict) {
  check_inputs(measurements, grid, target_freq_hz, cfg);

  const std::vector<double>& freqs = init_dict.atom_freqs_hz;
  if (static_cast<int>(freqs.size()) != cfg.num_atoms ||
      !(init_dict.grid == grid))
    throw std::invalid_argument("learn: init dictionary does not match config");
  Dictionary dict = init_dict;
  const int num_atoms = dict.num_atoms();
  const int num_measured = measurements.mask.size();

  std::vector<HelmholtzOperator> operators;
  operators.reserve(num_atoms);
  for (double f : freqs)
    operators.push_back(build_operator(grid, f, cfg.operator_variant));

  // beta H^T H is constant per atom across iterations; only the masked
  // diagonal shift |x_l|^2 changes.
  std::vector<SparseReal> penalty_matrices;
  if (cfg.beta > 0.0) {
    penalty_matrices.reserve(num_atoms);
    for (const auto& op : operators) {
      // No pruning: the structural pattern must stay identical across
      // atom frequencies so one symbolic analysis serves every solve.
      SparseReal hth = op.matrix.transpose() * op.matrix;
      hth *= cfg.beta;
      hth.makeCompressed();
      penalty_matrices.push_back(std::move(hth));
    }
  }

  CMatrix measured = measured_rows(dict, measurements.mask);
  CVector x = CVector::Zero(num_atoms);
  Coefficients coeffs{x, 0.0, 0, true};

  // All atom systems share one sparsity pattern (frequency only moves the
  // diagonal values), so the symbolic analysis is done once.
  Eigen::SimplicialLDLT<SparseReal> solver;
  bool pattern_analyzed = false;

  std::vector<double> objective_trace, after_sparse_trace, penalty_trace;
  objective_trace.reserve(cfg.outer_iters);
  after_sparse_trace.reserve(cfg.outer_iters);
  penalty_trace.reserve(cfg.outer_iters);

  double penalty = penalty_sum(operators, dict.atoms);
  double data = 0.0;

  for (int iter = 0; iter < cfg.outer_iters; ++iter) {
    // Sparse coding on the current measured rows, warm started.
    SparseProblem problem{measured, measurements.values, cfg.alpha};
    coeffs = sparse_code(problem, kInnerTol, kInnerIters, x);
    x = coeffs.values;
    after_sparse_trace.push_back(coeffs.objective + cfg.beta * penalty);

    // Block coordinate sweep over atoms.
    for (int l = 0; l < num_atoms; ++l) {
      const Complex x_l = x[l];
      const double mag = std::abs(x_l);
      if (cfg.skip_unused_atoms && mag <= kUnusedAtomThreshold) continue;

      // Residual with atom l removed from the synthesis.
      CVector r = measurements.values - measured * x + x_l * measured.col(l);

      if (cfg.beta == 0.0) {
        if (mag == 0.0)
          throw NumericError("learn: singular update for unused atom " +
                             std::to_string(l) + " with beta = 0");
        // Only measured rows are constrained; everything else keeps its
        // previous value bit for bit.
        for (int i = 0; i < num_measured; ++i)
          dict.atoms(measurements.mask.indices[i], l) = r[i] / x_l;
      } else {
        SparseReal system = penalty_matrices[l];
        RVector rhs_re = RVector::Zero(grid.point_count());
        RVector rhs_im = RVector::Zero(grid.point_count());
        const Complex weight = std::conj(x_l);
        for (int i = 0; i < num_measured; ++i) {
          const int idx = measurements.mask.indices[i];
          system.coeffRef(idx, idx) += mag * mag;
          const Complex value = weight * r[i];
          rhs_re[idx] = value.real();
          rhs_im[idx] = value.imag();
        }
        if (!pattern_analyzed) {
          solver.analyzePattern(system);
          pattern_analyzed = true;
        }
        solver.factorize(system);
        if (solver.info() != Eigen::Success)
          throw NumericError("learn: atom update factorization failed for atom " +
                             std::to_string(l));
        const RVector d_re = solver.solve(rhs_re);
        const RVector d_im = solver.solve(rhs_im);
        if (solver.info() != Eigen::Success)
          throw NumericError("learn: atom update solve failed for atom " +
                             std::to_string(l));
        CVector atom(grid.point_count());
        atom.real() = d_re;
        atom.imag() = d_im;
        dict.atoms.col(l) = atom;
      }
      for (int i = 0; i < num_measured; ++i)
        measured(i, l) = dict.atoms(measurements.mask.indices[i], l);
    }

    penalty = penalty_sum(operators, dict.atoms);
    data = (measurements.values - measured * x).squaredNorm();
    objective_trace.push_back(data + cfg.alpha * x.cwiseAbs().sum() +
                              cfg.beta * penalty);
    penalty_trace.push_back(penalty);
  }

  // Re-anchor the reported sparse objective to the final dictionary so the
  // stored value matches what a caller recomputes from the result.
  coeffs.values = x;
  coeffs.objective = data + cfg.alpha * x.cwiseAbs().sum();

  return LearnResult{std::move(dict),
                     std::move(coeffs),
                     target_freq_hz,
                     std::move(objective_trace),
                     std::move(after_sparse_trace),
                     std::move(penalty_trace)};
}

PressureField reconstruct(const LearnResult& result) {
  const CVector values = result.dictionary.atoms * result.coefficients.values;
  return {result.dictionary.grid, result.target_freq_hz, values};
}

PressureField reconstruct_with_dictionary(const Dictionary& dict,
                                          const MeasurementSet& measurements,
                                          double alpha, double target_freq_hz) {
  const CMatrix measured = measured_rows(dict, measurements.mask);
  SparseProblem problem{measured, measurements.values, alpha};
  const Coefficients coeffs = sparse_code(problem);
  return {dict.grid, target_freq_hz, dict.atoms * coeffs.values};
}

}  // namespace helmfield
