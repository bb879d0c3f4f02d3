#pragma once

#include <initializer_list>

#include <gtest/gtest.h>

#include "ergo/ergo.hpp"

namespace ergo::test {

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = static_cast<Eigen::Index>(rows.begin()->size());
    Matrix m(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

inline Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

inline Matrix two_state() { return mat({{0.5, 0.5}, {0.25, 0.75}}); }
inline Matrix flip() { return mat({{0.75, 0.25}, {0.25, 0.75}}); }
inline Matrix sym09() { return mat({{0.9, 0.1}, {0.1, 0.9}}); }
inline Matrix consensus(Eigen::Index n) { return Matrix::Constant(n, n, 1.0 / static_cast<double>(n)); }

}  // namespace ergo::test
