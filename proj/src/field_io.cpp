#include "helmfield/field_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace helmfield {

namespace {

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string header_value(const std::string& line, const std::string& key,
                         const std::filesystem::path& path) {
  const std::string prefix = "# " + key + "=";
  if (line.rfind(prefix, 0) != 0)
    throw FormatError(path.string() + ": expected header '" + prefix +
                      "...', got '" + line + "'");
  return line.substr(prefix.size());
}

double parse_double(const std::string& text, const std::filesystem::path& path) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw FormatError(path.string() + ": bad number '" + text + "'");
  }
  if (used != text.size())
    throw FormatError(path.string() + ": bad number '" + text + "'");
  return value;
}

long parse_long(const std::string& text, const std::filesystem::path& path) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    throw FormatError(path.string() + ": bad integer '" + text + "'");
  }
  if (used != text.size())
    throw FormatError(path.string() + ": bad integer '" + text + "'");
  return value;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

struct GridHeader {
  Grid2D grid;
  std::size_t next_line;
};

GridHeader parse_grid_header(const std::vector<std::string>& lines,
                             const std::filesystem::path& path) {
  if (lines.size() < 3) throw FormatError(path.string() + ": truncated header");
  const int n = static_cast<int>(parse_long(header_value(lines[0], "grid_n", path), path));
  const double spacing = parse_double(header_value(lines[1], "spacing_m", path), path);
  const auto origin_fields = split_fields(header_value(lines[2], "origin_m", path));
  if (origin_fields.size() != 2)
    throw FormatError(path.string() + ": origin_m needs two coordinates");
  const std::array<double, 2> origin{parse_double(origin_fields[0], path),
                                     parse_double(origin_fields[1], path)};
  try {
    return {Grid2D(n, spacing, origin), 3};
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void check_data_rows(std::size_t have, int expect,
                     const std::filesystem::path& path) {
  if (static_cast<long>(have) != expect)
    throw FormatError(path.string() + ": expected " + std::to_string(expect) +
                      " data rows, found " + std::to_string(have));
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

PressureField load_field(const std::filesystem::path& path) {
  const auto lines = split_lines(read_all(path));
  const auto [grid, body_start] = parse_grid_header(lines, path);
  if (lines.size() < body_start + 1)
    throw FormatError(path.string() + ": truncated header");
  const double freq_hz =
      parse_double(header_value(lines[body_start], "freq_hz", path), path);
  if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
    throw FormatError(path.string() + ": freq_hz must be positive");

  const std::size_t data_start = body_start + 1;
  check_data_rows(lines.size() - data_start, grid.point_count(), path);

  CVector values(grid.point_count());
  for (int i = 0; i < grid.point_count(); ++i) {
    const auto fields = split_fields(lines[data_start + i]);
    if (fields.size() != 3)
      throw FormatError(path.string() + ": data row needs index,re,im");
    if (parse_long(fields[0], path) != i)
      throw FormatError(path.string() + ": data rows must be in ascending index order");
    const double re = parse_double(fields[1], path);
    const double im = parse_double(fields[2], path);
    if (!std::isfinite(re) || !std::isfinite(im))
      throw FormatError(path.string() + ": non-finite value at index " +
                        std::to_string(i));
    values[i] = Complex(re, im);
  }
  return {grid, freq_hz, std::move(values)};
}

void save_field(const PressureField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# grid_n=" << field.grid.n << "\n";
  out << "# spacing_m=" << format_double(field.grid.spacing_m) << "\n";
  out << "# origin_m=" << format_double(field.grid.origin_m[0]) << ","
      << format_double(field.grid.origin_m[1]) << "\n";
  out << "# freq_hz=" << format_double(field.freq_hz) << "\n";
  for (int i = 0; i < field.grid.point_count(); ++i)
    out << i << "," << format_double(field.values[i].real()) << ","
        << format_double(field.values[i].imag()) << "\n";
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Dictionary load_dictionary(const std::filesystem::path& path) {
  const auto lines = split_lines(read_all(path));
  const auto [grid, body_start] = parse_grid_header(lines, path);
  if (lines.size() < body_start + 1)
    throw FormatError(path.string() + ": truncated header");
  const auto freq_fields =
      split_fields(header_value(lines[body_start], "atom_freqs_hz", path));
  if (freq_fields.empty())
    throw FormatError(path.string() + ": no atom frequencies");
  std::vector<double> freqs;
  freqs.reserve(freq_fields.size());
  for (const auto& f : freq_fields) freqs.push_back(parse_double(f, path));
  for (std::size_t l = 0; l < freqs.size(); ++l) {
    if (!(freqs[l] > 0.0) || (l > 0 && !(freqs[l] > freqs[l - 1])))
      throw FormatError(path.string() +
                        ": atom frequencies must be positive and strictly increasing");
  }

  const std::size_t data_start = body_start + 1;
  check_data_rows(lines.size() - data_start, grid.point_count(), path);

  const int num_atoms = static_cast<int>(freqs.size());
  CMatrix atoms(grid.point_count(), num_atoms);
  for (int i = 0; i < grid.point_count(); ++i) {
    const auto fields = split_fields(lines[data_start + i]);
    if (fields.size() != static_cast<std::size_t>(1 + 2 * num_atoms))
      throw FormatError(path.string() + ": data row needs index plus " +
                        std::to_string(2 * num_atoms) + " values");
    if (parse_long(fields[0], path) != i)
      throw FormatError(path.string() + ": data rows must be in ascending index order");
    for (int l = 0; l < num_atoms; ++l) {
      const double re = parse_double(fields[1 + 2 * l], path);
      const double im = parse_double(fields[2 + 2 * l], path);
      if (!std::isfinite(re) || !std::isfinite(im))
        throw FormatError(path.string() + ": non-finite value at index " +
                          std::to_string(i));
      atoms(i, l) = Complex(re, im);
    }
  }
  return {grid, std::move(freqs), std::move(atoms)};
}

void save_dictionary(const Dictionary& dict, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# grid_n=" << dict.grid.n << "\n";
  out << "# spacing_m=" << format_double(dict.grid.spacing_m) << "\n";
  out << "# origin_m=" << format_double(dict.grid.origin_m[0]) << ","
      << format_double(dict.grid.origin_m[1]) << "\n";
  out << "# atom_freqs_hz=";
  for (std::size_t l = 0; l < dict.atom_freqs_hz.size(); ++l) {
    if (l > 0) out << ",";
    out << format_double(dict.atom_freqs_hz[l]);
  }
  out << "\n";
  for (int i = 0; i < dict.grid.point_count(); ++i) {
    out << i;
    for (int l = 0; l < dict.num_atoms(); ++l)
      out << "," << format_double(dict.atoms(i, l).real()) << ","
          << format_double(dict.atoms(i, l).imag());
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string method_name(Method method) {
  return method == Method::BL ? "BL" : "Proposed";
}

Method parse_method(const std::string& name) {
  if (name == "BL" || name == "bl") return Method::BL;
  if (name == "Proposed" || name == "proposed") return Method::Proposed;
  throw std::invalid_argument("unknown method '" + name + "'");
}

std::uint64_t mask_hash(const MeasurementMask& mask) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (int idx : mask.indices) {
    auto value = static_cast<std::uint32_t>(idx);
    for (int byte = 0; byte < 4; ++byte) {
      hash ^= (value >> (8 * byte)) & 0xffu;
      hash *= 0x100000001b3ull;
    }
  }
  return hash;
}

void save_report(std::span<const ReportRow> rows,
                 const std::filesystem::path& path, bool with_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "band_lo_hz,band_hi_hz,freq_hz,fold,method,m,nmse_db,ncc,"
         "wall_time_s,mask_hash\n";
  char hash_buffer[32];
  for (const auto& row : rows) {
    out << format_double(row.band_lo_hz) << "," << format_double(row.band_hi_hz)
        << "," << format_double(row.freq_hz) << "," << row.fold << ","
        << method_name(row.method) << "," << row.m << ",";
    if (std::isinf(row.nmse_db) && row.nmse_db < 0)
      out << "-inf";
    else
      out << format_double(row.nmse_db);
    out << "," << format_double(row.ncc) << ","
        << format_double(with_timing ? row.wall_time_s : 0.0) << ",";
    std::snprintf(hash_buffer, sizeof(hash_buffer), "%016" PRIx64, row.mask_hash);
    out << hash_buffer << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace helmfield
