#include "sparsereg/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "sparsereg/errors.hpp"

namespace sparsereg {

namespace {

double parse_field(const std::string& field, const std::string& path,
                   std::size_t line_no) {
  std::size_t begin = 0;
  std::size_t end = field.size();
  while (begin < end && (field[begin] == ' ' || field[begin] == '\t')) ++begin;
  while (end > begin && (field[end - 1] == ' ' || field[end - 1] == '\t' ||
                         field[end - 1] == '\r')) {
    --end;
  }
  double value = 0.0;
  const char* first = field.data() + begin;
  const char* last = field.data() + end;
  const auto result = std::from_chars(first, last, value);
  if (result.ec != std::errc() || result.ptr != last || first == last) {
    throw InvalidMatrixError(path + ":" + std::to_string(line_no) +
                             ": cannot parse '" + field + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw InvalidMatrixError(path + ":" + std::to_string(line_no) +
                             ": non-finite value");
  }
  return value;
}

std::vector<std::vector<double>> load_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidMatrixError("cannot open '" + path + "'");
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      continue;
    }
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string field = line.substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start);
      row.push_back(parse_field(field, path, line_no));
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidMatrixError(path + ":" + std::to_string(line_no) +
                               ": ragged row (expected " +
                               std::to_string(rows.front().size()) +
                               " fields, got " + std::to_string(row.size()) +
                               ")");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw InvalidMatrixError("'" + path + "' contains no data rows");
  }
  return rows;
}

}  // namespace

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
  const auto rows = load_rows(path);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return m;
}

Eigen::VectorXd load_vector_csv(const std::string& path) {
  const Eigen::MatrixXd m = load_matrix_csv(path);
  if (m.cols() != 1) {
    throw InvalidMatrixError("'" + path + "' must be a single-column CSV");
  }
  return m.col(0);
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: stable line endings
  if (!out) {
    throw InvalidMatrixError("cannot write '" + path + "'");
  }
  return out;
}

}  // namespace

void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void save_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
  save_matrix_csv(path, v);
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j > 0) out << ',';
    out << header[j];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out << ',';
      out << format_double(row[j]);
    }
    out << '\n';
  }
}

}  // namespace sparsereg
