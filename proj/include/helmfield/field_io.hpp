#ifndef HELMFIELD_FIELD_IO_HPP
#define HELMFIELD_FIELD_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "helmfield/dictionary.hpp"
#include "helmfield/field.hpp"

namespace helmfield {

// Field files are UTF-8 CSV, LF line endings:
//   # grid_n=<int>
//   # spacing_m=<float>
//   # origin_m=<float>,<float>
//   # freq_hz=<float>
//   <index>,<re>,<im>            (n^2 lines, ascending row-major index)
// Floats carry 17 significant digits so save -> load round-trips exactly.

PressureField load_field(const std::filesystem::path& path);
void save_field(const PressureField& field, const std::filesystem::path& path);

// Dictionary files reuse the container with one column block per atom and
// an atom-frequency header in place of freq_hz:
//   # atom_freqs_hz=<f0>,<f1>,...
//   <index>,<re_0>,<im_0>,...,<re_{L-1}>,<im_{L-1}>

Dictionary load_dictionary(const std::filesystem::path& path);
void save_dictionary(const Dictionary& dict, const std::filesystem::path& path);

enum class Method { BL, Proposed };

std::string method_name(Method method);
Method parse_method(const std::string& name);

struct ReportRow {
  double band_lo_hz;
  double band_hi_hz;
  double freq_hz;
  int fold;
  Method method;
  int m;
  double nmse_db;
  double ncc;
  double wall_time_s;
  std::uint64_t mask_hash;
};

/// Writes the report CSV. Wall times are zeroed unless with_timing is set,
/// keeping default report bytes identical across runs and thread counts.
void save_report(std::span<const ReportRow> rows,
                 const std::filesystem::path& path, bool with_timing = false);

/// FNV-1a over the mask indices, used to prove mask pairing in reports.
std::uint64_t mask_hash(const MeasurementMask& mask);

/// Shortest decimal form that still round-trips (printf %.17g).
std::string format_double(double value);

}  // namespace helmfield

#endif
