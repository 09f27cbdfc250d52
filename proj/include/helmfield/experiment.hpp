#ifndef HELMFIELD_EXPERIMENT_HPP
#define HELMFIELD_EXPERIMENT_HPP

#include <array>
#include <filesystem>
#include <functional>
#include <limits>
#include <vector>

#include "helmfield/field_io.hpp"
#include "helmfield/learner.hpp"
#include "helmfield/synthfield.hpp"

namespace helmfield {

struct SweepSpec {
  std::vector<std::array<double, 2>> bands_hz = {
      {500.0, 700.0}, {700.0, 900.0}, {900.0, 1100.0}, {1100.0, 1300.0}};
  double eval_freq_step_hz = 2.5;
  std::vector<int> mic_counts = {10, 20, 30, 40, 50};
  int folds = 5;
  std::uint64_t base_seed = 0;
  std::vector<Method> methods = {Method::BL, Method::Proposed};
  LearnConfig learn_cfg;
  // Learn one dictionary per (band, fold, M) at the band centre and reuse
  // it across the band instead of learning at every evaluation frequency.
  bool reuse_dict_within_band = false;
  double snr_db = std::numeric_limits<double>::infinity();
};

/// Supplies the ground-truth field at an evaluation frequency. Must be a
/// pure function: the sweep calls it from worker threads.
using FieldProvider = std::function<PressureField(double freq_hz)>;

std::vector<double> eval_frequencies(double band_lo_hz, double band_hi_hz,
                                     double step_hz);

/// Runs the full sweep protocol. Mask per (band, fold, M) is shared by all
/// methods and evaluation frequencies of that tuple, so method comparisons
/// are paired. Rows come back sorted by (band, freq, fold, method, M) and
/// are identical for any worker-thread count (HELMFIELD_THREADS).
std::vector<ReportRow> run_sweep(const SweepSpec& spec, const Grid2D& grid,
                                 const FieldProvider& provider);

// --- CLI-facing config -----------------------------------------------------

struct FieldSourceSpec {
  enum class Kind { Directory, SyntheticPlaneWaves };
  Kind kind = Kind::SyntheticPlaneWaves;
  std::filesystem::path directory;  // Kind::Directory
  int num_waves = 5;                // Kind::SyntheticPlaneWaves
  std::uint64_t seed = 0;
};

struct SweepConfig {
  Grid2D grid;
  SweepSpec spec;
  FieldSourceSpec source;
};

/// Parses the JSON sweep configuration (see README for the schema).
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Directory sources read f<freq>.csv per frequency; synthetic sources
/// evaluate a fixed random plane-wave set at each frequency.
FieldProvider make_field_provider(const FieldSourceSpec& source,
                                  const Grid2D& grid);

/// Worker count from HELMFIELD_THREADS (0 or unset means auto).
int worker_count();

}  // namespace helmfield

#endif
