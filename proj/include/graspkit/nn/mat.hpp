#pragma once

#include <Eigen/Dense>

#include "graspkit/rng.hpp"

namespace graspkit {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Matf = Mat<float>;
using Matd = Mat<double>;

template <class S>
Mat<S> gaussian_mat(int rows, int cols, Rng& rng, double stddev = 1.0) {
  Mat<S> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = static_cast<S>(rng.gaussian(0.0, stddev));
  return m;
}

/// Truncated normal (resample beyond 2 sigma), the usual transformer init.
template <class S>
Mat<S> trunc_normal_mat(int rows, int cols, Rng& rng, double stddev) {
  Mat<S> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double v;
      do {
        v = rng.gaussian(0.0, stddev);
      } while (std::fabs(v) > 2.0 * stddev);
      m(i, j) = static_cast<S>(v);
    }
  return m;
}

}  // namespace graspkit
