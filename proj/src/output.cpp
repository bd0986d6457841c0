#include "levymom/output.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "levymom/errors.hpp"

namespace levymom {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::string>) return v;
        else if constexpr (std::is_same_v<V, Rational>) return format_rational(v);
        else if constexpr (std::is_same_v<V, Real>) return format_real(v);
        else if constexpr (std::is_same_v<V, bool>) return v ? "true" : "false";
        else return std::to_string(v);
      },
      cell);
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw InvalidArgument("row width does not match the table header");
  rows.push_back(std::move(row));
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ParseError("unknown output format '" + text + "' (expected csv or json)");
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

void write_csv(std::ostream& out, const Provenance& prov, const Table& table) {
  out << "# command=" << prov.command << " config_hash=" << hex64(prov.config_hash)
      << " scalar=" << to_string(prov.scalar) << " seed=" << prov.seed << " version=" << prov.version << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_escape(table.columns[i]);
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(format_cell(row[i]));
    out << "\n";
  }
}

void write_json(std::ostream& out, const Provenance& prov, const Table& table) {
  nlohmann::ordered_json doc;
  doc["provenance"] = {{"command", prov.command},
                       {"config_hash", hex64(prov.config_hash)},
                       {"scalar", to_string(prov.scalar)},
                       {"seed", prov.seed},
                       {"version", prov.version}};
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      // Exact and real values stay strings so that re-parsing is lossless.
      if (const auto* b = std::get_if<bool>(&c)) obj[table.columns[i]] = *b;
      else if (const auto* n = std::get_if<long long>(&c)) obj[table.columns[i]] = *n;
      else obj[table.columns[i]] = format_cell(c);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

void write_table(std::ostream& out, OutputFormat format, const Provenance& prov, const Table& table) {
  if (format == OutputFormat::Csv) write_csv(out, prov, table);
  else write_json(out, prov, table);
}

}  // namespace levymom
