#include "bmvs/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "bmvs/errors.hpp"

namespace bmvs {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_double(const std::string& token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && begin != end;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open file: " + path);
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!line.empty()) {
      lines.push_back(line);
    }
  }
  return lines;
}

}  // namespace

CsvMatrix read_matrix_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) {
    throw DataError(path + ": file has no rows");
  }

  CsvMatrix out;
  std::size_t first_data_row = 0;
  const std::vector<std::string> head = split_fields(lines[0]);
  bool header = false;
  for (const std::string& tok : head) {
    double ignored;
    if (!parse_double(tok, ignored)) {
      header = true;
      break;
    }
  }
  if (header) {
    out.names = head;
    first_data_row = 1;
  }
  if (first_data_row >= lines.size()) {
    throw DataError(path + ": no data rows after the header");
  }

  const std::size_t cols = head.size();
  const std::size_t rows = lines.size() - first_data_row;
  out.values.resize(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t line_no = r + first_data_row + 1;
    const std::vector<std::string> fields =
        split_fields(lines[r + first_data_row]);
    if (fields.size() != cols) {
      throw DataError(path + ": row " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      double value;
      if (!parse_double(fields[c], value)) {
        throw DataError(path + ": row " + std::to_string(line_no) +
                        ", column " + std::to_string(c + 1) +
                        ": cannot parse '" + fields[c] + "'");
      }
      if (!std::isfinite(value)) {
        throw DataError(path + ": row " + std::to_string(line_no) +
                        ", column " + std::to_string(c + 1) +
                        ": non-finite value '" + fields[c] + "'");
      }
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          value;
    }
  }
  return out;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& values,
                      const std::vector<std::string>& names) {
  if (!names.empty() &&
      static_cast<Eigen::Index>(names.size()) != values.cols()) {
    throw DataError("write_matrix_csv: names size does not match columns");
  }
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open file for writing: " + path);
  }
  if (!names.empty()) {
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (c > 0) out << ',';
      out << names[c];
    }
    out << '\n';
  }
  char buf[64];
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c > 0) out << ',';
      const auto [ptr, ec] = std::to_chars(
          buf, buf + sizeof(buf), values(r, c), std::chars_format::general,
          17);
      if (ec != std::errc()) {
        throw NumericError("write_matrix_csv: formatting failed");
      }
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
  if (!out) {
    throw DataError("write failed: " + path);
  }
}

GenotypeMatrix read_genotype_csv(const std::string& path, double maf_min) {
  if (maf_min < 0.0 || maf_min > 0.5) {
    throw DataError("read_genotype_csv: maf_min must lie in [0, 0.5]");
  }
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) {
    throw DataError(path + ": file has no rows");
  }

  auto code_of = [&](const std::string& tok, std::size_t line_no,
                     std::size_t col) -> double {
    double numeric;
    if (parse_double(tok, numeric)) {
      if (numeric == 0.0 || numeric == 1.0 || numeric == 2.0) {
        return numeric;
      }
    } else if (tok.size() == 2 && (tok[0] == 'A' || tok[0] == 'a') &&
               (tok[1] == 'A' || tok[1] == 'a')) {
      return static_cast<double>((tok[0] == 'a') + (tok[1] == 'a'));
    }
    throw DataError(path + ": row " + std::to_string(line_no) + ", column " +
                    std::to_string(col + 1) + ": invalid genotype '" + tok +
                    "'");
  };

  const std::vector<std::string> head = split_fields(lines[0]);
  bool header = false;
  for (const std::string& tok : head) {
    double numeric;
    const bool two_letter = tok.size() == 2 && (tok[0] == 'A' || tok[0] == 'a') &&
                            (tok[1] == 'A' || tok[1] == 'a');
    if (!parse_double(tok, numeric) && !two_letter) {
      header = true;
      break;
    }
  }
  const std::size_t first_data_row = header ? 1 : 0;
  if (first_data_row >= lines.size()) {
    throw DataError(path + ": no data rows after the header");
  }

  const std::size_t cols = head.size();
  const std::size_t rows = lines.size() - first_data_row;
  Eigen::MatrixXd raw(static_cast<Eigen::Index>(rows),
                      static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t line_no = r + first_data_row + 1;
    const std::vector<std::string> fields =
        split_fields(lines[r + first_data_row]);
    if (fields.size() != cols) {
      throw DataError(path + ": row " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      raw(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          code_of(fields[c], line_no, c);
    }
  }

  GenotypeMatrix out;
  for (std::size_t c = 0; c < cols; ++c) {
    const double freq = raw.col(static_cast<Eigen::Index>(c)).mean() / 2.0;
    const double maf = std::min(freq, 1.0 - freq);
    const std::string label =
        header ? head[c] : "column " + std::to_string(c + 1);
    if (maf < maf_min) {
      out.dropped.push_back(label);
    } else {
      out.kept.push_back(static_cast<Eigen::Index>(c));
      if (header) {
        out.names.push_back(head[c]);
      }
    }
  }
  out.values.resize(raw.rows(), static_cast<Eigen::Index>(out.kept.size()));
  for (std::size_t j = 0; j < out.kept.size(); ++j) {
    out.values.col(static_cast<Eigen::Index>(j)) = raw.col(out.kept[j]);
  }
  return out;
}

}  // namespace bmvs
