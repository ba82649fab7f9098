#include "negcone/cone.hpp"

#include <algorithm>

namespace negcone {

namespace {

bool nonnegative(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; });
}

// a_k = 1 and a_{<k} = -(A_11)^{-1} A_12 over the leading k x k block.
std::optional<std::vector<Rational>> column_weights(const Matrix& a, std::size_t k) {
  const std::size_t m = a.size();
  std::vector<Rational> w(m);
  w[k] = 1;
  if (k > 0) {
    Matrix block(k, Vec(k));
    Vec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) block[i][j] = a[i][j];
      rhs[i] = -a[i][k];
    }
    auto sol = solve_square(block, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < k; ++i) w[i] = (*sol)[i];
  }
  if (!nonnegative(w)) return std::nullopt;
  for (std::size_t i = 0; i < m; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (w[j] != 0) s += a[i][j] * w[j];
    }
    if (s < 0) return std::nullopt;
  }
  return w;
}

}  // namespace

std::optional<PositiveReduction> rref_positive(const Matrix& a) {
  const std::size_t m = a.size();
  for (const auto& row : a) {
    if (row.size() != m) throw DimensionMismatch("rref_positive: matrix is not square");
  }
  Matrix rows = a;
  Matrix weights(m, Vec(m));
  for (std::size_t i = 0; i < m; ++i) weights[i][i] = 1;

  for (std::size_t k = 0; k < m; ++k) {
    if (nonnegative(rows[k])) {
      PositiveReduction out;
      out.row = k;
      out.row_weights = weights[k];
      out.nonnegative_row = rows[k];
      out.column_weights = column_weights(a, k);
      return out;
    }
    const Rational pivot = rows[k][k];
    if (pivot >= 0) continue;
    for (std::size_t i = k + 1; i < m; ++i) {
      if (rows[i][k] <= 0) continue;
      const Rational f = rows[i][k] / -pivot;
      for (std::size_t j = 0; j < m; ++j) {
        if (rows[k][j] != 0) rows[i][j] += f * rows[k][j];
        if (weights[k][j] != 0) weights[i][j] += f * weights[k][j];
      }
    }
  }
  return std::nullopt;
}

}  // namespace negcone
