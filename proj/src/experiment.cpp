#include "helmfield/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "helmfield/metrics.hpp"

namespace helmfield {

namespace {

using json = nlohmann::json;

std::uint64_t combine_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                           std::uint64_t c) {
  // splitmix64-style mixing of the tuple (base, band, fold, M).
  std::uint64_t x = base;
  for (std::uint64_t piece : {a, b, c}) {
    x ^= piece + 0x9e3779b97f4a7c15ull + (x << 6) + (x >> 2);
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    x ^= x >> 31;
  }
  return x;
}

void check_spec(const SweepSpec& spec) {
  if (spec.bands_hz.empty()) throw std::invalid_argument("sweep: no bands");
  for (const auto& band : spec.bands_hz)
    if (!(band[0] > 0.0 && band[1] > band[0]))
      throw std::invalid_argument("sweep: bad band");
  if (!(spec.eval_freq_step_hz > 0.0))
    throw std::invalid_argument("sweep: step must be > 0");
  if (spec.mic_counts.empty()) throw std::invalid_argument("sweep: no mic counts");
  if (spec.folds < 1) throw std::invalid_argument("sweep: folds must be >= 1");
  if (spec.methods.empty()) throw std::invalid_argument("sweep: no methods");
}

struct Job {
  int band_idx;
  int fold;
  int mics;
};

}  // namespace

std::vector<double> eval_frequencies(double band_lo_hz, double band_hi_hz,
                                     double step_hz) {
  const int count =
      static_cast<int>(std::floor((band_hi_hz - band_lo_hz) / step_hz + 1e-9)) + 1;
  std::vector<double> freqs(count);
  for (int i = 0; i < count; ++i) freqs[i] = band_lo_hz + i * step_hz;
  return freqs;
}

int worker_count() {
  const char* env = std::getenv("HELMFIELD_THREADS");
  long requested = 0;
  if (env && *env) requested = std::strtol(env, nullptr, 10);
  if (requested <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return static_cast<int>(requested);
}

std::vector<ReportRow> run_sweep(const SweepSpec& spec, const Grid2D& grid,
                                 const FieldProvider& provider) {
  check_spec(spec);

  // One baseline dictionary per band; it is both the BL dictionary and the
  // initialization of the proposed method.
  std::vector<Dictionary> band_dicts;
  band_dicts.reserve(spec.bands_hz.size());
  for (const auto& band : spec.bands_hz)
    band_dicts.push_back(sample_baseline_dictionary(
        grid, atom_frequencies(band[0], band[1], spec.learn_cfg.num_atoms),
        spec.learn_cfg.init_seed));

  std::vector<Job> jobs;
  for (int band_idx = 0; band_idx < static_cast<int>(spec.bands_hz.size()); ++band_idx)
    for (int fold = 0; fold < spec.folds; ++fold)
      for (int mics : spec.mic_counts) jobs.push_back({band_idx, fold, mics});

  std::vector<std::vector<ReportRow>> job_rows(jobs.size());

  auto run_job = [&](const Job& job, std::vector<ReportRow>& rows) {
    const auto& band = spec.bands_hz[job.band_idx];
    LearnConfig cfg = spec.learn_cfg;
    cfg.band_lo_hz = band[0];
    cfg.band_hi_hz = band[1];
    const Dictionary& bl_dict = band_dicts[job.band_idx];

    const MeasurementMask mask =
        draw_mask(grid, job.mics, spec.base_seed + static_cast<std::uint64_t>(job.fold));
    const std::uint64_t hash = mask_hash(mask);
    const std::uint64_t noise_seed =
        combine_seed(spec.base_seed, static_cast<std::uint64_t>(job.band_idx),
                     static_cast<std::uint64_t>(job.fold),
                     static_cast<std::uint64_t>(job.mics));
    const bool with_noise = std::isfinite(spec.snr_db);

    const bool wants_proposed =
        std::find(spec.methods.begin(), spec.methods.end(), Method::Proposed) !=
        spec.methods.end();

    // Reuse mode: one dictionary per (band, fold, M), learned at the centre.
    std::optional<Dictionary> reused;
    if (spec.reuse_dict_within_band && wants_proposed) {
      const double centre = 0.5 * (band[0] + band[1]);
      PressureField truth = provider(centre);
      if (!(truth.grid == grid))
        throw FormatError("sweep: provider grid does not match sweep grid");
      MeasurementSet ms = sample_field(truth, mask);
      if (with_noise) ms = add_noise(ms, spec.snr_db, noise_seed);
      reused = learn(ms, grid, centre, cfg, bl_dict).dictionary;
    }

    for (double freq : eval_frequencies(band[0], band[1], spec.eval_freq_step_hz)) {
      const PressureField truth = provider(freq);
      if (!(truth.grid == grid))
        throw FormatError("sweep: provider grid does not match sweep grid");
      if (truth.freq_hz != freq)
        throw FormatError("sweep: provider returned wrong frequency");

      MeasurementSet ms = sample_field(truth, mask);
      if (with_noise) ms = add_noise(ms, spec.snr_db, noise_seed);

      for (Method method : spec.methods) {
        const auto start = std::chrono::steady_clock::now();
        PressureField recon = [&] {
          if (method == Method::BL)
            return reconstruct_with_dictionary(bl_dict, ms, cfg.alpha, freq);
          if (reused)
            return reconstruct_with_dictionary(*reused, ms, cfg.alpha, freq);
          return reconstruct(learn(ms, grid, freq, cfg, bl_dict));
        }();
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;

        const Score s = score(truth, recon);
        rows.push_back({band[0], band[1], freq, job.fold, method, job.mics,
                        s.nmse_db, s.ncc, elapsed.count(), hash});
      }
    }
  };

  const int workers =
      std::min<int>(worker_count(), static_cast<int>(jobs.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker_loop = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        run_job(jobs[i], job_rows[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<ReportRow> rows;
  for (auto& part : job_rows)
    rows.insert(rows.end(), part.begin(), part.end());
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tuple(a.band_lo_hz, a.band_hi_hz, a.freq_hz, a.fold,
                      static_cast<int>(a.method), a.m) <
           std::tuple(b.band_lo_hz, b.band_hi_hz, b.freq_hz, b.fold,
                      static_cast<int>(b.method), b.m);
  });
  return rows;
}

FieldProvider make_field_provider(const FieldSourceSpec& source,
                                  const Grid2D& grid) {
  if (source.kind == FieldSourceSpec::Kind::Directory) {
    const std::filesystem::path dir = source.directory;
    return [dir, grid](double freq_hz) {
      char name[64];
      std::snprintf(name, sizeof(name), "f%g.csv", freq_hz);
      const std::filesystem::path path = dir / name;
      if (!std::filesystem::exists(path))
        throw std::runtime_error("field file not found: " + path.string());
      PressureField field = load_field(path);
      if (!(field.grid == grid))
        throw FormatError(path.string() + ": grid does not match sweep grid");
      return field;
    };
  }
  const PlaneWaveSet waves = random_plane_waves(source.num_waves, source.seed);
  return [waves, grid](double freq_hz) {
    return plane_wave_field(grid, freq_hz, waves);
  };
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }

  try {
    const auto& grid_doc = doc.at("grid");
    std::array<double, 2> origin{0.0, 0.0};
    if (grid_doc.contains("origin_m"))
      origin = {grid_doc["origin_m"].at(0).get<double>(),
                grid_doc["origin_m"].at(1).get<double>()};
    Grid2D grid(grid_doc.at("n").get<int>(),
                grid_doc.at("spacing_m").get<double>(), origin);

    SweepSpec spec;
    if (doc.contains("bands_hz")) {
      spec.bands_hz.clear();
      for (const auto& band : doc["bands_hz"])
        spec.bands_hz.push_back({band.at(0).get<double>(), band.at(1).get<double>()});
    }
    if (doc.contains("eval_freq_step_hz"))
      spec.eval_freq_step_hz = doc["eval_freq_step_hz"].get<double>();
    if (doc.contains("mic_counts"))
      spec.mic_counts = doc["mic_counts"].get<std::vector<int>>();
    if (doc.contains("folds")) spec.folds = doc["folds"].get<int>();
    if (doc.contains("base_seed"))
      spec.base_seed = doc["base_seed"].get<std::uint64_t>();
    if (doc.contains("methods")) {
      spec.methods.clear();
      for (const auto& name : doc["methods"])
        spec.methods.push_back(parse_method(name.get<std::string>()));
    }
    if (doc.contains("reuse_dict_within_band"))
      spec.reuse_dict_within_band = doc["reuse_dict_within_band"].get<bool>();
    if (doc.contains("snr_db") && !doc["snr_db"].is_null())
      spec.snr_db = doc["snr_db"].get<double>();

    if (doc.contains("learn")) {
      const auto& learn_doc = doc["learn"];
      if (learn_doc.contains("alpha"))
        spec.learn_cfg.alpha = learn_doc["alpha"].get<double>();
      if (learn_doc.contains("beta"))
        spec.learn_cfg.beta = learn_doc["beta"].get<double>();
      if (learn_doc.contains("outer_iters"))
        spec.learn_cfg.outer_iters = learn_doc["outer_iters"].get<int>();
      if (learn_doc.contains("num_atoms"))
        spec.learn_cfg.num_atoms = learn_doc["num_atoms"].get<int>();
      if (learn_doc.contains("init_seed"))
        spec.learn_cfg.init_seed = learn_doc["init_seed"].get<std::uint64_t>();
      if (learn_doc.contains("skip_unused_atoms"))
        spec.learn_cfg.skip_unused_atoms = learn_doc["skip_unused_atoms"].get<bool>();
      if (learn_doc.contains("operator_variant")) {
        const std::string variant = learn_doc["operator_variant"].get<std::string>();
        if (variant == "paper")
          spec.learn_cfg.operator_variant = OperatorVariant::PaperToeplitz;
        else if (variant == "grid")
          spec.learn_cfg.operator_variant = OperatorVariant::GridAware;
        else
          throw std::invalid_argument("operator_variant must be 'paper' or 'grid'");
      }
    }

    FieldSourceSpec source;
    const auto& source_doc = doc.at("source");
    const std::string kind = source_doc.at("type").get<std::string>();
    if (kind == "directory") {
      source.kind = FieldSourceSpec::Kind::Directory;
      source.directory = source_doc.at("path").get<std::string>();
      if (source.directory.is_relative())
        source.directory = path.parent_path() / source.directory;
    } else if (kind == "synthetic_plane_waves") {
      source.kind = FieldSourceSpec::Kind::SyntheticPlaneWaves;
      if (source_doc.contains("num_waves"))
        source.num_waves = source_doc["num_waves"].get<int>();
      if (source_doc.contains("seed"))
        source.seed = source_doc["seed"].get<std::uint64_t>();
    } else {
      throw std::invalid_argument("source.type must be 'directory' or 'synthetic_plane_waves'");
    }

    return {grid, spec, source};
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace helmfield
