#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helmfield/field_io.hpp"
#include "helmfield/rng.hpp"
#include "test_support.hpp"

using namespace helmfield;
using helmfield::testing::bits_equal;

namespace {

std::filesystem::path temp_dir() {
  const auto dir =
      std::filesystem::temp_directory_path() / "helmfield_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

PressureField random_field(const Grid2D& grid, std::uint64_t seed) {
  Rng rng(seed);
  CVector values(grid.point_count());
  for (int i = 0; i < values.size(); ++i)
    values[i] = Complex(rng.normal() * 1e3, rng.normal() * 1e-7);
  return {grid, 612.5, values};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("field save/load round-trips bitwise") {
  const auto path = temp_dir() / "field_roundtrip.csv";
  const Grid2D grid(8, 0.025, {-0.1, 0.2});
  const PressureField field = random_field(grid, 10);
  save_field(field, path);

  const PressureField loaded = load_field(path);
  CHECK(loaded.grid == grid);
  CHECK(loaded.freq_hz == field.freq_hz);
  CHECK(bits_equal(loaded.values, field.values));

  // LF line endings only.
  CHECK(slurp(path).find('\r') == std::string::npos);
}

TEST_CASE("row-count mismatch names the expected count") {
  const auto path = temp_dir() / "short.csv";
  const Grid2D grid(8, 0.025);
  save_field({grid, 600.0, CVector::Zero(64)}, path);

  // Drop the last data line.
  std::string text = slurp(path);
  text.erase(text.find_last_of('\n', text.size() - 2) + 1);
  std::ofstream(path, std::ios::binary) << text;

  CHECK_THROWS_WITH_AS(load_field(path), doctest::Contains("64"), FormatError);
}

TEST_CASE("paper-scale header parses to the matching grid") {
  const auto path = temp_dir() / "paper_scale.csv";
  const Grid2D grid(69, 0.025);
  save_field({grid, 600.0, CVector::Zero(grid.point_count())}, path);
  const PressureField loaded = load_field(path);
  CHECK(loaded.grid.n == 69);
  CHECK(loaded.grid.spacing_m == 0.025);
  CHECK(loaded.freq_hz == 600.0);
}

TEST_CASE("malformed inputs are rejected with FormatError") {
  const auto dir = temp_dir();

  const auto bad_header = dir / "bad_header.csv";
  std::ofstream(bad_header, std::ios::binary)
      << "# wrong=3\n# spacing_m=0.1\n# origin_m=0,0\n# freq_hz=600\n";
  CHECK_THROWS_AS(load_field(bad_header), FormatError);

  const auto bad_number = dir / "bad_number.csv";
  std::ofstream(bad_number, std::ios::binary)
      << "# grid_n=3\n# spacing_m=0.1\n# origin_m=0,0\n# freq_hz=abc\n";
  CHECK_THROWS_AS(load_field(bad_number), FormatError);

  const auto non_finite = dir / "non_finite.csv";
  {
    std::ofstream out(non_finite, std::ios::binary);
    out << "# grid_n=3\n# spacing_m=0.1\n# origin_m=0,0\n# freq_hz=600\n";
    for (int i = 0; i < 9; ++i)
      out << i << (i == 4 ? ",inf,0\n" : ",1,0\n");
  }
  CHECK_THROWS_AS(load_field(non_finite), FormatError);

  const auto tiny_grid = dir / "tiny_grid.csv";
  std::ofstream(tiny_grid, std::ios::binary)
      << "# grid_n=2\n# spacing_m=0.1\n# origin_m=0,0\n# freq_hz=600\n";
  CHECK_THROWS_AS(load_field(tiny_grid), FormatError);

  CHECK_THROWS_AS(load_field(dir / "does_not_exist.csv"), std::runtime_error);
}

TEST_CASE("dictionary save/load round-trips bitwise") {
  const auto path = temp_dir() / "dict_roundtrip.csv";
  const Grid2D grid(5, 0.03);
  Rng rng(77);
  Dictionary dict{grid, {500.0, 612.5, 700.0}, CMatrix(grid.point_count(), 3)};
  for (int i = 0; i < grid.point_count(); ++i)
    for (int l = 0; l < 3; ++l)
      dict.atoms(i, l) = Complex(rng.normal(), rng.normal());

  save_dictionary(dict, path);
  const Dictionary loaded = load_dictionary(path);
  CHECK(loaded.grid == grid);
  CHECK(loaded.atom_freqs_hz == dict.atom_freqs_hz);
  CHECK(bits_equal(loaded.atoms, dict.atoms));
}

TEST_CASE("report rows serialize with -inf and hashed masks") {
  const auto path = temp_dir() / "report.csv";
  MeasurementMask mask{{1, 5, 9}, 4};
  const std::uint64_t hash = mask_hash(mask);

  std::vector<ReportRow> rows = {
      {500.0, 700.0, 600.0, 0, Method::BL, 3, -1.25, 0.5, 1.75, hash},
      {500.0, 700.0, 600.0, 0, Method::Proposed, 3,
       -std::numeric_limits<double>::infinity(), 1.0, 2.5, hash},
  };
  save_report(rows, path);

  std::istringstream text(slurp(path));
  std::string line;
  std::getline(text, line);
  CHECK(line ==
        "band_lo_hz,band_hi_hz,freq_hz,fold,method,m,nmse_db,ncc,"
        "wall_time_s,mask_hash");
  std::getline(text, line);
  CHECK(line.find(",BL,") != std::string::npos);
  CHECK(line.find(",0,") != std::string::npos);  // zeroed wall time
  std::getline(text, line);
  CHECK(line.find(",-inf,") != std::string::npos);
  CHECK(line.find(",Proposed,") != std::string::npos);

  // Timing mode records the measured value instead.
  save_report(rows, path, true);
  CHECK(slurp(path).find("1.75") != std::string::npos);
}

TEST_CASE("mask hash distinguishes masks and ignores nothing") {
  MeasurementMask a{{1, 2, 3}, 0};
  MeasurementMask b{{1, 2, 4}, 0};
  CHECK(mask_hash(a) == mask_hash(a));
  CHECK(mask_hash(a) != mask_hash(b));
}

TEST_CASE("format_double survives a parse round-trip") {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const double value = (rng.uniform() - 0.5) * std::pow(10.0, i % 40 - 20);
    CHECK(std::stod(format_double(value)) == value);
  }
}
