#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bmvs {

struct CsvMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> names;  // empty when the file has no header row
};

// Comma-separated numeric matrix, one observation per row. A single header
// row is auto-detected (any non-numeric token in the first row). Rejects
// NaN/Inf tokens and ragged rows; parse errors carry 1-based row/column
// coordinates. Locale-independent.
CsvMatrix read_matrix_csv(const std::string& path);

// Writes with 17 significant digits (exact double round-trip).
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& values,
                      const std::vector<std::string>& names = {});

struct GenotypeMatrix {
  Eigen::MatrixXd values;            // codes {0,1,2}, MAF-filtered columns
  std::vector<std::string> names;    // filtered, empty when no header
  std::vector<Eigen::Index> kept;    // 0-based original column indices
  std::vector<std::string> dropped;  // human-readable dropped-column labels
};

// Genotype codes 0/1/2, or two-letter strings over {A, a} mapped to the
// count of 'a'. Columns with minor-allele frequency below maf_min are
// dropped.
GenotypeMatrix read_genotype_csv(const std::string& path,
                                 double maf_min = 0.05);

}  // namespace bmvs
