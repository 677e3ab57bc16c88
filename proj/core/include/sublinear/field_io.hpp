#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "sublinear/field.hpp"

namespace sublinear {

/// CSV with header `x,y,u`, one row per node (row-major), boundary and
/// exterior rows carrying their stored value (0 for solutions). Numbers are
/// written in shortest round-trip form, so output is byte-stable.
void write_csv(std::ostream& out, const ScalarField& field);
void write_csv(const std::filesystem::path& path, const ScalarField& field);

/// Binary layout, all little-endian float64:
///   header[8] = {magic, version, nx, ny, spacing, origin_x, origin_y, field_count}
///   then field_count blocks of nx*ny values in row-major order.
struct BinaryHeader {
  static constexpr double kMagic = 1398096462.0;  // "SUBN" as a 32-bit tag
  static constexpr double kVersion = 1.0;

  std::size_t nx = 0;
  std::size_t ny = 0;
  double spacing = 0.0;
  Point origin{};
  std::size_t field_count = 0;
};

void write_binary(std::ostream& out, std::span<const ScalarField> fields);
void write_binary(const std::filesystem::path& path, std::span<const ScalarField> fields);

struct BinaryFields {
  BinaryHeader header;
  std::vector<std::vector<double>> fields;
};

BinaryFields read_binary(std::istream& in);
BinaryFields read_binary(const std::filesystem::path& path);

}  // namespace sublinear
