#include "negcone/cone.hpp"

#include <algorithm>

namespace negcone {

void Budget::check_rays(std::size_t count) const {
  if (count > max_rays) {
    throw BudgetExceeded("ray count " + std::to_string(count) +
                         " exceeds ceiling " + std::to_string(max_rays));
  }
}

void Budget::check_time() const {
  if (deadline && std::chrono::steady_clock::now() > *deadline) {
    throw BudgetExceeded("wall-clock ceiling reached");
  }
}

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("dot: lengths " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Vec primitive(const Vec& v) {
  Integer den_lcm = 1;
  for (const auto& x : v) {
    if (x != 0) den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(x));
  }
  Integer num_gcd = 0;
  for (const auto& x : v) {
    if (x == 0) continue;
    Integer n = boost::multiprecision::numerator(x) * (den_lcm / boost::multiprecision::denominator(x));
    num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(n));
  }
  if (num_gcd == 0) return v;
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Integer n = boost::multiprecision::numerator(v[i]) * (den_lcm / boost::multiprecision::denominator(v[i]));
    out[i] = Rational(n / num_gcd);
  }
  return out;
}

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

// Row-reduces `m` in place to reduced echelon form; returns pivot columns.
std::vector<std::size_t> reduce(Matrix& m, std::size_t dim) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < m.size(); ++col) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    const Rational inv = 1 / m[r][col];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      // Trailing columns past `dim` (an augmented rhs) are carried along.
      for (std::size_t j = col; j < m[i].size(); ++j) {
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
      }
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(std::span<const Vec> rows, std::size_t dim) {
  Matrix m(rows.begin(), rows.end());
  for (const auto& r : m) {
    if (r.size() != dim) throw DimensionMismatch("rank: row length mismatch");
  }
  return reduce(m, dim).size();
}

std::vector<Vec> nullspace(std::span<const Vec> rows, std::size_t dim) {
  Matrix m(rows.begin(), rows.end());
  for (const auto& r : m) {
    if (r.size() != dim) throw DimensionMismatch("nullspace: row length mismatch");
  }
  const auto pivots = reduce(m, dim);
  std::vector<bool> is_pivot(dim, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    Vec v(dim);
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][free];
    basis.push_back(primitive(v));
  }
  return basis;
}

std::optional<Vec> solve_square(const Matrix& a, const Vec& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DimensionMismatch("solve_square: rhs length");
  Matrix m;
  m.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DimensionMismatch("solve_square: not square");
    Vec row = a[i];
    row.push_back(b[i]);
    m.push_back(std::move(row));
  }
  const auto pivots = reduce(m, n);
  if (pivots.size() != n) return std::nullopt;
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

}  // namespace negcone
