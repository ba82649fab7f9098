#include "negcone/cone.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

namespace negcone {

namespace {

struct Overflow {};

// 128-bit integer that throws Overflow instead of wrapping. The double
// description loop runs on this first and restarts on Integer if it throws.
struct Wide {
  __int128 v = 0;

  friend Wide operator*(Wide a, Wide b) {
    Wide r;
    if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw Overflow{};
    return r;
  }
  friend Wide operator+(Wide a, Wide b) {
    Wide r;
    if (__builtin_add_overflow(a.v, b.v, &r.v)) throw Overflow{};
    return r;
  }
  friend Wide operator-(Wide a, Wide b) {
    Wide r;
    if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw Overflow{};
    return r;
  }
  friend Wide operator/(Wide a, Wide b) { return Wide{a.v / b.v}; }
  friend bool operator==(Wide a, Wide b) { return a.v == b.v; }
  friend bool operator<(Wide a, Wide b) { return a.v < b.v; }
  friend bool operator>(Wide a, Wide b) { return a.v > b.v; }
};

int sign(const Wide& x) { return (x.v > 0) - (x.v < 0); }
int sign(const Integer& x) { return x.sign(); }

Wide abs_of(const Wide& x) {
  if (x.v < 0) {
    if (x.v == -x.v) throw Overflow{};  // minimum value
    return Wide{-x.v};
  }
  return x;
}
Integer abs_of(const Integer& x) { return boost::multiprecision::abs(x); }

Wide gcd_of(Wide a, Wide b) {
  __int128 x = abs_of(a).v, y = abs_of(b).v;
  while (y != 0) {
    __int128 t = x % y;
    x = y;
    y = t;
  }
  return Wide{x};
}
Integer gcd_of(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

template <class Int>
Int from_integer(const Integer& x);

template <>
Wide from_integer<Wide>(const Integer& x) {
  static const Integer lim = Integer(1) << 120;
  if (boost::multiprecision::abs(x) >= lim) throw Overflow{};
  const bool neg = x.sign() < 0;
  Integer a = boost::multiprecision::abs(x);
  unsigned __int128 r = 0;
  const unsigned long long lo = static_cast<unsigned long long>(a & Integer(~0ULL));
  const unsigned long long hi = static_cast<unsigned long long>(a >> 64);
  r = (static_cast<unsigned __int128>(hi) << 64) | lo;
  __int128 s = static_cast<__int128>(r);
  return Wide{neg ? -s : s};
}

template <>
Integer from_integer<Integer>(const Integer& x) {
  return x;
}

Integer to_integer(const Wide& x) {
  const bool neg = x.v < 0;
  unsigned __int128 a = neg ? static_cast<unsigned __int128>(-(x.v + 1)) + 1
                            : static_cast<unsigned __int128>(x.v);
  Integer r = Integer(static_cast<unsigned long long>(a >> 64));
  r <<= 64;
  r += Integer(static_cast<unsigned long long>(a));
  return neg ? Integer(-r) : r;
}
const Integer& to_integer(const Integer& x) { return x; }

template <class Int>
using IVec = std::vector<Int>;

template <class Int>
Int dot_int(const IVec<Int>& a, const IVec<Int>& b) {
  Int s{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sign(a[i]) != 0 && sign(b[i]) != 0) s = s + a[i] * b[i];
  }
  return s;
}

template <class Int>
void normalize(IVec<Int>& v) {
  Int g{};
  for (const auto& x : v) {
    if (sign(x) != 0) g = gcd_of(g, x);
  }
  if (sign(g) == 0 || g == Int(1)) return;
  for (auto& x : v) x = x / g;
}

// Zero sets are plain word arrays; the pair loop below is the hot path and
// must not allocate.
using Words = std::vector<std::uint64_t>;

inline void set_bit(Words& w, std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }

inline std::size_t and_count(const Words& a, const Words& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(__builtin_popcountll(a[i] & b[i]));
  return c;
}

// (a & b) is a subset of t.
inline bool and_subset(const Words& a, const Words& b, const Words& t) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & b[i] & ~t[i]) != 0) return false;
  }
  return true;
}

template <class Int>
struct DDRay {
  IVec<Int> v;
  Words zero;
};

// Integer row (primitive) from a rational row.
IVec<Integer> integer_row(const Vec& row) {
  const Vec p = primitive(row);
  IVec<Integer> out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(boost::multiprecision::numerator(x));
  return out;
}

// Extreme rays of the pointed cone {u : rows u >= 0}; rows have full column
// rank n.
template <class Int>
std::vector<IVec<Integer>> dd_pointed(const std::vector<IVec<Integer>>& rows_in, std::size_t n,
                                      const Budget& budget) {
  const std::size_t k = rows_in.size();
  std::vector<IVec<Int>> rows(k);
  for (std::size_t i = 0; i < k; ++i) {
    rows[i].reserve(n);
    for (const auto& x : rows_in[i]) rows[i].push_back(from_integer<Int>(x));
  }

  // Greedy choice of n independent rows for the initial simplicial cone.
  std::vector<std::size_t> initial;
  Matrix chosen;
  for (std::size_t i = 0; i < k && initial.size() < n; ++i) {
    Vec r;
    for (const auto& x : rows_in[i]) r.emplace_back(x);
    chosen.push_back(r);
    if (rank(chosen, n) == chosen.size()) {
      initial.push_back(i);
    } else {
      chosen.pop_back();
    }
  }

  // Columns of the inverse of the chosen block are the initial rays.
  const std::size_t words = (k + 63) / 64;
  std::vector<DDRay<Int>> rays;
  for (std::size_t c = 0; c < n; ++c) {
    Vec e(n);
    e[c] = 1;
    auto col = solve_square(chosen, e);
    const Vec p = primitive(*col);
    DDRay<Int> ray;
    for (const auto& x : p) ray.v.push_back(from_integer<Int>(boost::multiprecision::numerator(x)));
    ray.zero.assign(words, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != c) set_bit(ray.zero, initial[j]);
    }
    rays.push_back(std::move(ray));
  }

  std::vector<bool> processed(k, false);
  for (auto i : initial) processed[i] = true;

  std::vector<Int> values;
  std::vector<std::vector<std::size_t>> zero_on(k);
  for (std::size_t step = initial.size(); step < k; ++step) {
    budget.check_time();
    // Next row: the one producing the fewest candidate pairs; ties by index.
    std::size_t idx = k;
    std::size_t best_pairs = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (processed[j]) continue;
      std::size_t np = 0, nn = 0;
      for (const auto& r : rays) {
        const int sg = sign(dot_int(rows[j], r.v));
        np += sg > 0;
        nn += sg < 0;
      }
      if (idx == k || np * nn < best_pairs) {
        idx = j;
        best_pairs = np * nn;
      }
    }
    processed[idx] = true;
    const auto& a = rows[idx];
    values.resize(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      values[r] = dot_int(a, rays[r].v);
      const int sg = sign(values[r]);
      if (sg > 0) pos.push_back(r);
      if (sg < 0) neg.push_back(r);
    }

    std::vector<DDRay<Int>> fresh;
    if (!neg.empty() && !pos.empty()) {
      for (auto& z : zero_on) z.clear();
      for (std::size_t r = 0; r < rays.size(); ++r) {
        for (std::size_t j = 0; j < k; ++j) {
          if ((rays[r].zero[j >> 6] >> (j & 63)) & 1) zero_on[j].push_back(r);
        }
      }
      const std::size_t need = n >= 2 ? n - 2 : 0;
      for (auto p : pos) {
        const Words& zp = rays[p].zero;
        for (auto q : neg) {
          const Words& zq = rays[q].zero;
          if (and_count(zp, zq) < need) continue;
          // Another ray vanishing on all common rows must be zero on the
          // sparsest of them, so only that row's list is scanned.
          bool adjacent = true;
          std::size_t sparse = k;
          for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t m = zp[w] & zq[w];
            while (m) {
              const std::size_t j = w * 64 + static_cast<std::size_t>(__builtin_ctzll(m));
              m &= m - 1;
              if (sparse == k || zero_on[j].size() < zero_on[sparse].size()) sparse = j;
            }
          }
          if (sparse == k) {
            adjacent = rays.size() == 2;
          } else {
            for (auto t : zero_on[sparse]) {
              if (t == p || t == q) continue;
              if (and_subset(zp, zq, rays[t].zero)) {
                adjacent = false;
                break;
              }
            }
          }
          if (!adjacent) continue;
          DDRay<Int> ray;
          ray.v.resize(n);
          const Int vp = values[p];
          const Int vq = abs_of(values[q]);
          for (std::size_t j = 0; j < n; ++j) ray.v[j] = vp * rays[q].v[j] + vq * rays[p].v[j];
          normalize(ray.v);
          ray.zero.resize(words);
          for (std::size_t w = 0; w < words; ++w) ray.zero[w] = zp[w] & zq[w];
          set_bit(ray.zero, idx);
          fresh.push_back(std::move(ray));
        }
      }
    }

    std::vector<DDRay<Int>> next;
    next.reserve(rays.size() - neg.size() + fresh.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      const int sg = sign(values[r]);
      if (sg < 0) continue;
      if (sg == 0) set_bit(rays[r].zero, idx);
      next.push_back(std::move(rays[r]));
    }
    for (auto& f : fresh) next.push_back(std::move(f));
    rays = std::move(next);
    budget.check_rays(rays.size());
    if (std::getenv("NEGCONE_DD_TRACE")) {
      std::fprintf(stderr, "dd: row %zu rays %zu pairs %zu\n", idx, rays.size(), pos.size() * neg.size());
    }
  }

  std::vector<IVec<Integer>> out;
  out.reserve(rays.size());
  for (const auto& r : rays) {
    IVec<Integer> v;
    v.reserve(n);
    for (const auto& x : r.v) v.push_back(to_integer(x));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

RayEnumeration extreme_rays(const InequalitySystem& sys, const Budget& budget) {
  const std::size_t d = sys.dim;
  for (const auto& f : sys.inequalities) {
    if (f.size() != d) throw DimensionMismatch("extreme_rays: inequality length");
  }
  for (const auto& f : sys.equalities) {
    if (f.size() != d) throw DimensionMismatch("extreme_rays: equality length");
  }

  // Basis of the equality subspace; work in its coordinates.
  std::vector<Vec> basis;
  if (sys.equalities.empty()) {
    for (std::size_t i = 0; i < d; ++i) {
      Vec e(d);
      e[i] = 1;
      basis.push_back(std::move(e));
    }
  } else {
    basis = nullspace(sys.equalities, d);
  }
  const std::size_t n = basis.size();
  RayEnumeration result;
  if (n == 0) return result;

  auto lift = [&](const Vec& u) {
    Vec v(d);
    for (std::size_t j = 0; j < n; ++j) {
      if (u[j] == 0) continue;
      for (std::size_t i = 0; i < d; ++i) {
        if (basis[j][i] != 0) v[i] += u[j] * basis[j][i];
      }
    }
    return primitive(v);
  };

  std::vector<Vec> projected;
  for (const auto& f : sys.inequalities) {
    Vec row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = dot(f, basis[j]);
    if (is_zero(row)) continue;
    row = primitive(row);
    if (std::find(projected.begin(), projected.end(), row) == projected.end()) {
      projected.push_back(std::move(row));
    }
  }

  if (rank(projected, n) < n) {
    result.pointed = false;
    for (const auto& u : nullspace(projected, n)) result.lineality.push_back(lift(u));
    return result;
  }

  std::vector<IVec<Integer>> rows;
  rows.reserve(projected.size());
  for (const auto& r : projected) rows.push_back(integer_row(r));

  std::vector<IVec<Integer>> raw;
  try {
    raw = dd_pointed<Wide>(rows, n, budget);
  } catch (const Overflow&) {
    raw = dd_pointed<Integer>(rows, n, budget);
  }

  for (const auto& u : raw) {
    Vec uq;
    uq.reserve(n);
    for (const auto& x : u) uq.emplace_back(x);
    result.rays.push_back(lift(uq));
  }
  std::sort(result.rays.begin(), result.rays.end(), lex_less);
  result.rays.erase(std::unique(result.rays.begin(), result.rays.end()), result.rays.end());
  return result;
}

FacetDescription facets(std::span<const Vec> rays, std::size_t dim, const Budget& budget) {
  for (const auto& r : rays) {
    if (r.size() != dim) throw DimensionMismatch("facets: ray length");
  }
  FacetDescription out;
  out.equations = nullspace(rays, dim);
  if (rays.empty()) return out;
  InequalitySystem sys;
  sys.dim = dim;
  sys.inequalities.assign(rays.begin(), rays.end());
  sys.equalities = out.equations;
  auto res = extreme_rays(sys, budget);
  if (!res.pointed) throw std::logic_error("facets: dual cone restricted to the span is not pointed");
  out.facets = std::move(res.rays);
  return out;
}

}  // namespace negcone
