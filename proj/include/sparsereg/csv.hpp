#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace sparsereg {

// Matrix files are plain CSV: one line per matrix row, comma-separated
// values, '.' decimal point regardless of locale, no header. Vectors are a
// single column. Loaders reject ragged rows, empty files and non-finite
// values.

Eigen::MatrixXd load_matrix_csv(const std::string& path);
Eigen::VectorXd load_vector_csv(const std::string& path);

void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
void save_vector_csv(const std::string& path, const Eigen::VectorXd& v);

// Shortest round-trip decimal form, locale-independent.
std::string format_double(double value);

// Table with a header row, used for per-trial suite output.
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace sparsereg
