#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "robustht/types.hpp"

namespace robustht::csv {

// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class Writer {
 public:
  explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << quote_if_needed(fields[i]);
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

inline bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  const auto res = std::from_chars(b, e, out);
  if (res.ec != std::errc()) return false;
  for (const char* p = res.ptr; p < e; ++p)
    if (*p != ' ' && *p != '\t') return false;
  return true;
}

}  // namespace detail

// First column y, remaining columns X; optional header row. Labels that are
// all exactly +/-1 mark a classification dataset.
inline Dataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line);
    std::vector<double> vals(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (!detail::parse_double(fields[i], vals[i])) {
        numeric = false;
        break;
      }
    if (!numeric) {
      if (first) {  // header row
        first = false;
        width = fields.size();
        continue;
      }
      throw std::runtime_error("non-numeric value outside header in " + path);
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width)
      throw std::runtime_error("ragged row in " + path);
    rows.push_back(std::move(vals));
    first = false;
  }
  if (rows.empty()) throw std::runtime_error("no data rows in " + path);
  if (width < 2) throw std::runtime_error("need a response column plus covariates in " + path);

  Dataset data;
  data.X.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 1));
  data.y.resize(static_cast<Eigen::Index>(rows.size()));
  bool pm1 = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    data.y[static_cast<Eigen::Index>(i)] = rows[i][0];
    if (rows[i][0] != 1.0 && rows[i][0] != -1.0) pm1 = false;
    for (std::size_t j = 1; j < width; ++j)
      data.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) = rows[i][j];
  }
  data.kind = pm1 ? DatasetKind::classification : DatasetKind::regression;
  data.validate();
  return data;
}

// Unlabeled datasets are written with a zero y column so the format stays
// uniform.
inline void write_dataset(const std::string& path, const Dataset& data, bool header = true) {
  Writer w(path);
  if (header) {
    std::vector<std::string> h{"y"};
    for (Eigen::Index j = 0; j < data.dim(); ++j) h.push_back("x" + std::to_string(j + 1));
    w.row(h);
  }
  const bool labeled = data.y.size() == data.n();
  std::vector<std::string> fields(static_cast<std::size_t>(data.dim()) + 1);
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    fields[0] = format_double(labeled ? data.y[i] : 0.0);
    for (Eigen::Index j = 0; j < data.dim(); ++j)
      fields[static_cast<std::size_t>(j) + 1] = format_double(data.X(i, j));
    w.row(fields);
  }
}

}  // namespace robustht::csv
