#pragma once

// Exact integer linear algebra.  Rank and pivot columns come from
// fraction-free (Bareiss) elimination over arbitrary-precision integers, so
// deficiency computations never depend on floating-point rank decisions.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace crn::linalg {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<std::int64_t>>& columns) {
    IntMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    return m;
  }

  IntMatrix operator*(const IntMatrix& rhs) const {
    IntMatrix out(rows, rhs.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        const auto a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < rhs.cols; ++j) out(i, j) += a * rhs(k, j);
      }
    return out;
  }

  std::vector<std::int64_t> column(std::size_t j) const {
    std::vector<std::int64_t> out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = (*this)(i, j);
    return out;
  }
};

struct EchelonResult {
  std::size_t rank = 0;
  /// Column indices holding pivots, increasing.  These columns form a basis
  /// of the column space chosen greedily left to right.
  std::vector<std::size_t> pivot_columns;
};

/// Bareiss elimination scanning columns left to right.  Row swaps only; the
/// previous pivot divides every 2x2 update exactly.
inline EchelonResult bareiss_echelon(const IntMatrix& a) {
  std::vector<std::vector<BigInt>> m(a.rows, std::vector<BigInt>(a.cols));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m[i][j] = a(i, j);

  EchelonResult res;
  BigInt prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
    std::size_t piv = row;
    while (piv < a.rows && m[piv][col] == 0) ++piv;
    if (piv == a.rows) continue;
    std::swap(m[piv], m[row]);
    const BigInt& p = m[row][col];
    for (std::size_t i = row + 1; i < a.rows; ++i) {
      for (std::size_t j = col + 1; j < a.cols; ++j) {
        m[i][j] = (p * m[i][j] - m[i][col] * m[row][j]) / prev;
      }
      m[i][col] = 0;
    }
    prev = m[row][col];
    res.pivot_columns.push_back(col);
    ++row;
  }
  res.rank = row;
  return res;
}

inline std::size_t rank(const IntMatrix& a) { return bareiss_echelon(a).rank; }

}  // namespace crn::linalg
