#pragma once
// Tabular output: CSV (locale-independent, 17 significant digits) and
// JSON-lines. Deterministic byte-for-byte given identical inputs.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace latgas {

using json = nlohmann::json;

inline std::string fmt_g17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Column {
  std::string name;
  std::string unit;  // annotation, e.g. "J", "1/J", "dimensionless"
};

using Cell = std::variant<double, std::string>;

struct Table {
  std::string name;
  std::vector<Column> cols;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> r) {
    if (r.size() != cols.size()) throw std::invalid_argument("Table: row width mismatch");
    rows.push_back(std::move(r));
  }
};

inline std::string cell_str(const Cell& c) {
  if (std::holds_alternative<double>(c)) return fmt_g17(std::get<double>(c));
  return std::get<std::string>(c);
}

inline void write_csv(const std::string& path, const Table& t) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  for (std::size_t i = 0; i < t.cols.size(); ++i) {
    f << t.cols[i].name;
    if (!t.cols[i].unit.empty()) f << " [" << t.cols[i].unit << "]";
    f << (i + 1 < t.cols.size() ? "," : "\n");
  }
  for (const auto& r : t.rows)
    for (std::size_t i = 0; i < r.size(); ++i)
      f << cell_str(r[i]) << (i + 1 < r.size() ? "," : "\n");
  if (!f) throw std::runtime_error("write_csv: write failed for " + path);
}

inline void write_jsonl(const std::string& path, const Table& t) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_jsonl: cannot open " + path);
  for (const auto& r : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (std::holds_alternative<double>(r[i])) {
        double v = std::get<double>(r[i]);
        if (std::isfinite(v))
          obj[t.cols[i].name] = v;
        else
          obj[t.cols[i].name] = fmt_g17(v);  // JSON has no inf/nan literals
      } else {
        obj[t.cols[i].name] = std::get<std::string>(r[i]);
      }
    }
    f << obj.dump() << "\n";
  }
  if (!f) throw std::runtime_error("write_jsonl: write failed for " + path);
}

}  // namespace latgas
