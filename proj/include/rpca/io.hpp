#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rpca/matrix.hpp"

namespace rpca {

// Shared matrix text format: one matrix row per line, entries as decimal
// literals separated by single commas, no header; dimensions inferred.
// Writers emit 17 significant digits so values round-trip exactly.

inline void write_matrix(std::ostream& os, const DenseMatrix& a) {
  char buf[40];
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
      if (j) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

inline void write_matrix_file(const std::string& path, const DenseMatrix& a) {
  std::ofstream os(path);
  require(os.good(), "cannot open matrix file for writing");
  write_matrix(os, a);
  require(os.good(), "write to matrix file failed");
}

inline DenseMatrix read_matrix(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    // Tolerate trailing carriage returns and skip blank lines.
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      std::string tok = line.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("matrix file: unparseable entry '" + tok +
                                    "'");
      }
      while (used < tok.size() &&
             (tok[used] == ' ' || tok[used] == '\t'))
        ++used;
      require(used == tok.size(), "matrix file: trailing junk in entry");
      row.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty())
      require(row.size() == rows.front().size(),
              "matrix file: ragged rows");
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), "matrix file: empty input");
  DenseMatrix a(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  require(all_finite(a), "matrix file: non-finite entry");
  return a;
}

inline DenseMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), "cannot open matrix file for reading");
  return read_matrix(is);
}

inline std::string format_matrix(const DenseMatrix& a) {
  std::ostringstream os;
  write_matrix(os, a);
  return os.str();
}

}  // namespace rpca
