#include "bmvs/dataset.hpp"

#include "bmvs/errors.hpp"

namespace bmvs {

void DataSet::validate() const {
  if (x.rows() != y.rows()) {
    throw DataError("DataSet: X has " + std::to_string(x.rows()) +
                    " rows but Y has " + std::to_string(y.rows()));
  }
  if (x.rows() < 2) {
    throw DataError("DataSet: need at least 2 observations, got " +
                    std::to_string(x.rows()));
  }
  if (x.cols() < 1 || y.cols() < 1) {
    throw DataError("DataSet: X and Y must each have at least one column");
  }
  if (!x.allFinite()) {
    throw DataError("DataSet: X contains non-finite entries");
  }
  if (!y.allFinite()) {
    throw DataError("DataSet: Y contains non-finite entries");
  }
  if (!x_names.empty() && static_cast<Eigen::Index>(x_names.size()) != p()) {
    throw DataError("DataSet: x_names size does not match p");
  }
  if (!y_names.empty() && static_cast<Eigen::Index>(y_names.size()) != q()) {
    throw DataError("DataSet: y_names size does not match q");
  }
}

DataSet subset_columns(const DataSet& data,
                       const std::vector<Eigen::Index>& cols) {
  DataSet out;
  out.x.resize(data.n(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Eigen::Index c = cols[j];
    if (c < 0 || c >= data.p()) {
      throw DataError("subset_columns: index " + std::to_string(c) +
                      " out of range");
    }
    out.x.col(static_cast<Eigen::Index>(j)) = data.x.col(c);
    if (!data.x_names.empty()) {
      out.x_names.push_back(data.x_names[static_cast<std::size_t>(c)]);
    }
  }
  out.y = data.y;
  out.y_names = data.y_names;
  return out;
}

}  // namespace bmvs
