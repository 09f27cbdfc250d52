// Command-line front end: synthetic field generation, baseline dictionary
// export, single-shot reconstruction, the full sweep protocol, and field
// scoring. See README.md for examples.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helmfield/experiment.hpp"
#include "helmfield/field_io.hpp"
#include "helmfield/learner.hpp"
#include "helmfield/metrics.hpp"
#include "helmfield/synthfield.hpp"

namespace hf = helmfield;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct GridOptions {
  int n = 32;
  double spacing_m = 0.025;
  std::vector<double> origin_m = {0.0, 0.0};

  hf::Grid2D make() const {
    if (origin_m.size() != 2)
      throw std::invalid_argument("--origin needs exactly two values");
    return hf::Grid2D(n, spacing_m, {origin_m[0], origin_m[1]});
  }
};

void add_grid_options(CLI::App* cmd, GridOptions& grid) {
  cmd->add_option("--n", grid.n, "Grid points per side");
  cmd->add_option("--spacing", grid.spacing_m, "Grid spacing in meters");
  cmd->add_option("--origin", grid.origin_m, "Grid origin x,y in meters")
      ->expected(2);
}

hf::OperatorVariant parse_variant(const std::string& name) {
  if (name == "paper") return hf::OperatorVariant::PaperToeplitz;
  if (name == "grid") return hf::OperatorVariant::GridAware;
  throw std::invalid_argument("--variant must be 'paper' or 'grid'");
}

std::string field_file_name(double freq_hz) {
  char name[64];
  std::snprintf(name, sizeof(name), "f%g.csv", freq_hz);
  return name;
}

int run(int argc, char** argv) {
  CLI::App app{"Zero-shot physics-informed sound field reconstruction"};
  app.require_subcommand(1);

  // --- synth ---------------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "Generate synthetic field files");
  GridOptions synth_grid;
  add_grid_options(synth, synth_grid);
  std::string synth_type = "plane";
  double synth_freq = 600.0;
  std::vector<double> synth_band;
  double synth_step = 2.5;
  int synth_waves = 5;
  std::uint64_t synth_seed = 0;
  std::vector<double> synth_source = {-0.5, -0.5};
  std::vector<double> synth_source3d = {-0.5, -0.5, 0.5};
  bool synth_out_of_model = false;
  std::string synth_out;
  synth->add_option("--type", synth_type, "plane, cylindrical, or point3d");
  synth->add_option("--freq", synth_freq, "Single frequency in Hz");
  synth->add_option("--band", synth_band, "Band lo hi: emit one file per step")
      ->expected(2);
  synth->add_option("--step", synth_step, "Frequency step for --band mode");
  synth->add_option("--waves", synth_waves, "Number of plane waves");
  synth->add_option("--seed", synth_seed, "Wave draw seed");
  synth->add_option("--source", synth_source, "Cylindrical source x,y in meters")
      ->expected(2);
  synth->add_option("--source3d", synth_source3d,
                    "Point-source x,y,z in meters (point3d type)")
      ->expected(3);
  synth->add_flag("--out-of-model", synth_out_of_model,
                  "Acknowledge that point3d fields do not solve the in-plane "
                  "equation (required for --type point3d)");
  synth->add_option("--out", synth_out, "Output file (or directory with --band)")
      ->required();

  // --- dict ----------------------------------------------------------------
  auto* dict_cmd = app.add_subcommand("dict", "Emit the baseline dictionary");
  GridOptions dict_grid;
  add_grid_options(dict_cmd, dict_grid);
  std::vector<double> dict_band = {500.0, 700.0};
  int dict_atoms = 21;
  std::uint64_t dict_seed = 0;
  std::string dict_out;
  dict_cmd->add_option("--band", dict_band, "Band lo hi in Hz")->expected(2);
  dict_cmd->add_option("--atoms", dict_atoms, "Number of atoms");
  dict_cmd->add_option("--seed", dict_seed, "Sampling seed");
  dict_cmd->add_option("--out", dict_out, "Output CSV path")->required();

  // --- reconstruct ---------------------------------------------------------
  auto* rec = app.add_subcommand("reconstruct",
                                 "Reconstruct one field from masked samples");
  std::string rec_field;
  std::string rec_method = "proposed";
  int rec_mics = 50;
  std::uint64_t rec_seed = 0;
  double rec_alpha = 1.0;
  double rec_beta = 0.1;
  int rec_iters = 40;
  int rec_atoms = 21;
  std::vector<double> rec_band = {500.0, 700.0};
  std::string rec_variant = "paper";
  double rec_snr = std::numeric_limits<double>::infinity();
  std::uint64_t rec_init_seed = 0;
  std::string rec_out;
  rec->add_option("--field", rec_field, "Ground-truth field CSV")->required();
  rec->add_option("--method", rec_method, "bl or proposed");
  rec->add_option("--mics", rec_mics, "Number of measurement microphones");
  rec->add_option("--seed", rec_seed, "Microphone mask seed");
  rec->add_option("--alpha", rec_alpha, "Sparsity weight");
  rec->add_option("--beta", rec_beta, "Helmholtz penalty weight");
  rec->add_option("--iters", rec_iters, "Outer iterations");
  rec->add_option("--atoms", rec_atoms, "Number of atoms");
  rec->add_option("--band", rec_band, "Dictionary band lo hi in Hz")->expected(2);
  rec->add_option("--variant", rec_variant, "Operator variant: paper or grid");
  rec->add_option("--snr", rec_snr, "Measurement SNR in dB (default noiseless)");
  rec->add_option("--init-seed", rec_init_seed, "Dictionary initialization seed");
  rec->add_option("--out", rec_out, "Write the reconstructed field here");

  // --- sweep ---------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "Run the full sweep protocol");
  std::string sweep_config;
  std::string sweep_out;
  bool sweep_timing = false;
  bool sweep_reuse = false;
  sweep->add_option("--config", sweep_config, "JSON sweep configuration")
      ->required();
  sweep->add_option("--out", sweep_out, "Report CSV path")->required();
  sweep->add_flag("--timing", sweep_timing,
                  "Record wall times (report bytes then vary run to run)");
  sweep->add_flag("--reuse-dict-within-band", sweep_reuse,
                  "Learn once per (band, fold, M) at the band centre and "
                  "reuse that dictionary across the band");

  // --- score ---------------------------------------------------------------
  auto* score_cmd = app.add_subcommand("score", "Score one field against another");
  std::string score_truth;
  std::string score_estimate;
  bool score_literal = false;
  score_cmd->add_option("--truth", score_truth, "Ground-truth field CSV")
      ->required();
  score_cmd->add_option("--estimate", score_estimate, "Estimated field CSV")
      ->required();
  score_cmd->add_flag("--ncc-literal", score_literal,
                      "Also print the squared-norm NCC variant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (synth->parsed()) {
    const hf::Grid2D grid = synth_grid.make();
    const auto make_field = [&](double freq) -> hf::PressureField {
      if (synth_type == "plane") {
        const hf::PlaneWaveSet waves =
            hf::random_plane_waves(synth_waves, synth_seed);
        return hf::plane_wave_field(grid, freq, waves);
      }
      if (synth_type == "cylindrical")
        return hf::cylindrical_wave_field(
            grid, freq, {synth_source[0], synth_source[1]}, {1.0, 0.0});
      if (synth_type == "point3d") {
        if (!synth_out_of_model)
          throw std::invalid_argument(
              "point3d fields do not solve the in-plane equation; pass "
              "--out-of-model to generate one anyway");
        return hf::point_source_field_3d(
            grid, freq,
            {synth_source3d[0], synth_source3d[1], synth_source3d[2]},
            {1.0, 0.0});
      }
      throw std::invalid_argument(
          "--type must be 'plane', 'cylindrical', or 'point3d'");
    };
    if (synth_band.empty()) {
      hf::save_field(make_field(synth_freq), synth_out);
    } else {
      std::filesystem::create_directories(synth_out);
      for (double f :
           hf::eval_frequencies(synth_band[0], synth_band[1], synth_step))
        hf::save_field(make_field(f),
                       std::filesystem::path(synth_out) / field_file_name(f));
    }
    return 0;
  }

  if (dict_cmd->parsed()) {
    const hf::Grid2D grid = dict_grid.make();
    const hf::Dictionary dict = hf::sample_baseline_dictionary(
        grid, hf::atom_frequencies(dict_band[0], dict_band[1], dict_atoms),
        dict_seed);
    hf::save_dictionary(dict, dict_out);
    return 0;
  }

  if (rec->parsed()) {
    const hf::PressureField truth = hf::load_field(rec_field);
    const hf::MeasurementMask mask =
        hf::draw_mask(truth.grid, rec_mics, rec_seed);
    hf::MeasurementSet ms = hf::sample_field(truth, mask);
    if (std::isfinite(rec_snr)) ms = hf::add_noise(ms, rec_snr, rec_seed);

    hf::LearnConfig cfg;
    cfg.alpha = rec_alpha;
    cfg.beta = rec_beta;
    cfg.outer_iters = rec_iters;
    cfg.num_atoms = rec_atoms;
    cfg.band_lo_hz = rec_band[0];
    cfg.band_hi_hz = rec_band[1];
    cfg.operator_variant = parse_variant(rec_variant);
    cfg.init_seed = rec_init_seed;

    hf::PressureField recon = [&] {
      if (hf::parse_method(rec_method) == hf::Method::BL) {
        const hf::Dictionary dict = hf::sample_baseline_dictionary(
            truth.grid,
            hf::atom_frequencies(cfg.band_lo_hz, cfg.band_hi_hz, cfg.num_atoms),
            cfg.init_seed);
        return hf::reconstruct_with_dictionary(dict, ms, cfg.alpha,
                                               truth.freq_hz);
      }
      return hf::reconstruct(hf::learn(ms, truth.grid, truth.freq_hz, cfg));
    }();

    const hf::Score s = hf::score(truth, recon);
    std::printf("nmse_db=%.6f ncc=%.6f\n", s.nmse_db, s.ncc);
    if (!rec_out.empty()) hf::save_field(recon, rec_out);
    return 0;
  }

  if (sweep->parsed()) {
    hf::SweepConfig config = hf::load_sweep_config(sweep_config);
    if (sweep_reuse) config.spec.reuse_dict_within_band = true;
    const hf::FieldProvider provider =
        hf::make_field_provider(config.source, config.grid);
    const std::vector<hf::ReportRow> rows =
        hf::run_sweep(config.spec, config.grid, provider);
    hf::save_report(rows, sweep_out, sweep_timing);
    std::printf("wrote %zu rows to %s\n", rows.size(), sweep_out.c_str());
    return 0;
  }

  if (score_cmd->parsed()) {
    const hf::PressureField truth = hf::load_field(score_truth);
    const hf::PressureField estimate = hf::load_field(score_estimate);
    const hf::Score s = hf::score(truth, estimate);
    std::printf("nmse_db=%.6f ncc=%.6f", s.nmse_db, s.ncc);
    if (score_literal)
      std::printf(" ncc_literal=%.9g", hf::ncc_literal(truth, estimate));
    std::printf("\n");
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hf::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const hf::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
