#pragma once

// Tabular results with a provenance header, written as CSV or JSON.
// Rationals print as "p/q", reals with 17 significant digits.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "levymom/scalar.hpp"

namespace levymom {

inline constexpr const char* kArtifactVersion = "0.1.0";

using Cell = std::variant<std::string, Rational, Real, long long, bool>;

std::string format_cell(const Cell& cell);

template <Field T>
Cell make_cell(const T& v) {
  return Cell(v);
}

template <Field T>
Cell make_cell(const Extended<T>& v) {
  if (v.finite()) return Cell(v.value());
  return Cell(v.format());
}

struct Provenance {
  std::string command;
  std::uint64_t config_hash = 0;
  ScalarMode scalar = ScalarMode::Rational;
  std::uint64_t seed = 0;
  std::string version = kArtifactVersion;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(const std::string& text);

void write_csv(std::ostream& out, const Provenance& prov, const Table& table);
void write_json(std::ostream& out, const Provenance& prov, const Table& table);
void write_table(std::ostream& out, OutputFormat format, const Provenance& prov, const Table& table);

std::string hex64(std::uint64_t v);

}  // namespace levymom
