#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <utility>

namespace affcurv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Index of the unordered pair (i, j), i <= j, in row-major upper-triangular
// storage of an n x n symmetric array.
inline int sym_index(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

inline int sym_count(int n) { return n * (n + 1) / 2; }

}  // namespace affcurv
