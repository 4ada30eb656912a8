#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace crowdperm {

// Minimal row-major double matrix for the desk-scale solver.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(int rows_in, int cols_in, double fill = 0.0)
      : rows(rows_in), cols(cols_in),
        data(static_cast<std::size_t>(rows_in) * cols_in, fill) {
    if (rows_in <= 0 || cols_in <= 0) {
      throw std::invalid_argument("DenseMatrix dimensions must be positive");
    }
  }
  DenseMatrix(int rows_in, int cols_in, std::vector<double> data_in)
      : rows(rows_in), cols(cols_in), data(std::move(data_in)) {
    if (rows_in <= 0 || cols_in <= 0 ||
        data.size() != static_cast<std::size_t>(rows_in) * cols_in) {
      throw std::invalid_argument("DenseMatrix shape/data mismatch");
    }
  }

  double& at(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
};

}  // namespace crowdperm
