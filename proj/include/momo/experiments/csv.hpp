#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "momo/core/error.hpp"

namespace momo::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Index of a header column or throws.
  std::size_t column(std::string const& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw IoError("missing column " + name);
  }
};

// 17 significant digits, enough to round-trip any double.
inline std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string join(std::vector<std::string> const& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

inline void ensure_parent(std::filesystem::path const& path) {
  if (!path.has_parent_path()) return;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec && !std::filesystem::is_directory(path.parent_path())) {
    throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
}

inline void write_text(std::filesystem::path const& path, std::string const& text) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw IoError("cannot write " + path.string());
}

inline std::string read_text(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string format(Table const& t) {
  std::string out = join(t.header) + "\n";
  for (auto const& r : t.rows) {
    std::vector<std::string> cells;
    cells.reserve(r.size());
    for (double v : r) cells.push_back(number(v));
    out += join(cells) + "\n";
  }
  return out;
}

inline void write(std::filesystem::path const& path, Table const& t) { write_text(path, format(t)); }

inline std::vector<std::string> split(std::string const& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Reads a numeric table with a header row.
inline Table read(std::filesystem::path const& path) {
  auto const text = read_text(path);
  std::istringstream in(text);
  std::string line;
  Table t;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto const cells = split(line);
    if (cells.size() != t.header.size()) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                    " cells");
    }
    std::vector<double> row;
    for (auto const& c : cells) {
      char* end = nullptr;
      double const v = std::strtod(c.c_str(), &end);
      if (c.empty() || end != c.c_str() + c.size()) {
        throw IoError(path.string() + ":" + std::to_string(lineno) + ": '" + c + "' is not a number");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

} // namespace momo::csv
