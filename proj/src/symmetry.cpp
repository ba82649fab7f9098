#include "negcone/catalog.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace negcone {

namespace {

bool is_permutation_of_markings(const Perm& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<bool> seen(n + 1, false);
  for (int x : p) {
    if (x < 1 || x > n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

Vec mat_vec(const Matrix& m, const Vec& v) {
  Vec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

IntVec int_mat_vec(const std::vector<IntVec>& m, const IntVec& v) {
  IntVec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (m[i][j] == 0 || v[j] == 0) continue;
      long long t;
      if (__builtin_mul_overflow(m[i][j], v[j], &t) || __builtin_add_overflow(s, t, &s)) {
        throw std::overflow_error("group action: coordinate overflow");
      }
    }
    out[i] = s;
  }
  return out;
}

std::vector<IntVec> to_int_matrix(const Matrix& m, const std::string& what) {
  std::vector<IntVec> out;
  for (const auto& row : m) {
    if (!is_integral(row)) throw CatalogError(what + " is not integral");
    out.push_back(to_int_vec(row));
  }
  return out;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  std::size_t find(std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) up[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> classes() {
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t i = 0; i < up.size(); ++i) by_root[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : by_root) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<std::size_t> up;
};

}  // namespace

Vec LinearAction::apply_divisor(const Vec& v) const { return mat_vec(on_divisors, v); }
Vec LinearAction::apply_curve(const Vec& v) const { return mat_vec(on_curves, v); }

LinearAction s_action(SpaceId id, const Perm& perm) {
  const int n = id == SpaceId::M05 ? 5 : 6;
  const std::size_t rk = id == SpaceId::M05 ? 5 : 16;
  if (!is_permutation_of_markings(perm, n)) throw std::invalid_argument("not a permutation of the markings");

  const auto labels = boundary_labels(id);
  std::vector<Vec> src, dst;
  for (const auto& l : labels) {
    std::vector<int> image;
    for (int x : l) image.push_back(perm[x - 1]);
    src.push_back(to_vec(boundary_class(id, l)));
    dst.push_back(to_vec(boundary_class(id, image)));
  }

  // Independent sources, as rows of B^T.
  std::vector<std::size_t> chosen;
  Matrix rows;
  for (std::size_t i = 0; i < src.size() && chosen.size() < rk; ++i) {
    rows.push_back(src[i]);
    if (rank(rows, rk) == rows.size()) {
      chosen.push_back(i);
    } else {
      rows.pop_back();
    }
  }
  if (chosen.size() != rk) throw CatalogError("boundary classes do not span the Picard lattice");

  // B has columns src[chosen]; T = B' B^{-1}. Column k of T is B' x with B x = e_k.
  Matrix b(rk, Vec(rk));
  for (std::size_t j = 0; j < rk; ++j) {
    for (std::size_t i = 0; i < rk; ++i) b[i][j] = src[chosen[j]][i];
  }
  LinearAction act;
  act.perm = perm;
  act.on_divisors.assign(rk, Vec(rk));
  for (std::size_t k = 0; k < rk; ++k) {
    Vec e(rk);
    e[k] = 1;
    const auto x = solve_square(b, e);
    for (std::size_t j = 0; j < rk; ++j) {
      if ((*x)[j] == 0) continue;
      for (std::size_t i = 0; i < rk; ++i) act.on_divisors[i][k] += (*x)[j] * dst[chosen[j]][i];
    }
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (act.apply_divisor(src[i]) != dst[i]) {
      std::string label;
      for (int x : labels[i]) label += std::to_string(x);
      throw CatalogError("boundary dictionary is not equivariant: delta_" + label +
                         " is not mapped to its relabeled class");
    }
  }

  // S = P T^{-T} P with P the diagonal pairing.
  std::vector<int> p(rk, -1);
  p[0] = 1;
  Matrix inv(rk, Vec(rk));
  for (std::size_t k = 0; k < rk; ++k) {
    Vec e(rk);
    e[k] = 1;
    const auto y = solve_square(act.on_divisors, e);
    if (!y) throw CatalogError("divisor action is singular");
    for (std::size_t i = 0; i < rk; ++i) inv[i][k] = (*y)[i];
  }
  act.on_curves.assign(rk, Vec(rk));
  for (std::size_t i = 0; i < rk; ++i) {
    for (std::size_t k = 0; k < rk; ++k) act.on_curves[i][k] = p[i] * inv[k][i] * p[k];
  }
  return act;
}

SymmetryGroup::SymmetryGroup(const Space& space) : rank_(space.rank) {
  const int n = space.n;
  for (int t = 1; t < n; ++t) {
    Perm g(n);
    std::iota(g.begin(), g.end(), 1);
    std::swap(g[t - 1], g[t]);
    const auto act = s_action(space.id, g);
    gen_div_.push_back(to_int_matrix(act.on_divisors, "divisor action"));
    gen_cur_.push_back(to_int_matrix(act.on_curves, "curve action"));
  }

  std::map<IntVec, std::size_t> curve_at, divisor_at;
  for (std::size_t i = 0; i < space.curves.size(); ++i) curve_at.emplace(space.curves[i].cls, i);
  for (std::size_t i = 0; i < space.divisors.size(); ++i) divisor_at.emplace(space.divisors[i].cls, i);

  Perm id(n);
  std::iota(id.begin(), id.end(), 1);
  std::map<Perm, std::size_t> seen{{id, 0}};
  all_perms_.push_back(id);
  parent_.push_back(0);
  via_.push_back(0);

  std::vector<std::vector<IntVec>> cimg{{}}, dimg{{}};
  for (const auto& c : space.curves) cimg[0].push_back(c.cls);
  for (const auto& d : space.divisors) dimg[0].push_back(d.cls);

  for (std::size_t head = 0; head < all_perms_.size(); ++head) {
    for (std::size_t g = 0; g + 1 < static_cast<std::size_t>(n); ++g) {
      Perm q(n);
      for (int i = 0; i < n; ++i) {
        int x = all_perms_[head][i];
        if (x == static_cast<int>(g) + 1) {
          x = static_cast<int>(g) + 2;
        } else if (x == static_cast<int>(g) + 2) {
          x = static_cast<int>(g) + 1;
        }
        q[i] = x;
      }
      if (seen.count(q)) continue;
      seen.emplace(q, all_perms_.size());
      all_perms_.push_back(q);
      parent_.push_back(head);
      via_.push_back(g);
      std::vector<IntVec> ci, di;
      for (const auto& v : cimg[head]) ci.push_back(int_mat_vec(gen_cur_[g], v));
      for (const auto& v : dimg[head]) di.push_back(int_mat_vec(gen_div_[g], v));
      cimg.push_back(std::move(ci));
      dimg.push_back(std::move(di));
    }
  }
  full_order_ = all_perms_.size();

  for (std::size_t p = 0; p < all_perms_.size(); ++p) {
    Element e;
    e.perm = all_perms_[p];
    bool ok = true;
    for (const auto& v : cimg[p]) {
      auto it = curve_at.find(v);
      if (it == curve_at.end()) {
        ok = false;
        break;
      }
      e.curve_perm.push_back(it->second);
    }
    for (std::size_t i = 0; ok && i < dimg[p].size(); ++i) {
      auto it = divisor_at.find(dimg[p][i]);
      if (it == divisor_at.end()) {
        ok = false;
        break;
      }
      e.divisor_perm.push_back(it->second);
    }
    for (std::size_t c = 0; ok && c < space.curves.size(); ++c) {
      if (e.divisor_perm[space.curves[c].swept] != space.curves[e.curve_perm[c]].swept) ok = false;
    }
    if (!ok) continue;
    members_.push_back(p);
    elements_.push_back(std::move(e));
  }

  for (int t = 1; t < n; ++t) {
    Perm g(n);
    std::iota(g.begin(), g.end(), 1);
    std::swap(g[t - 1], g[t]);
    bool in = false;
    for (const auto& e : elements_) in = in || e.perm == g;
    generator_closed_.push_back(in);
  }
}

std::vector<IntVec> SymmetryGroup::images(const IntVec& v, bool curve) const {
  if (v.size() != rank_) throw DimensionMismatch("group action: basis mismatch");
  const auto& gens = curve ? gen_cur_ : gen_div_;
  std::vector<IntVec> all(all_perms_.size());
  all[0] = v;
  for (std::size_t p = 1; p < all_perms_.size(); ++p) all[p] = int_mat_vec(gens[via_[p]], all[parent_[p]]);
  std::vector<IntVec> out;
  out.reserve(members_.size());
  for (auto p : members_) out.push_back(all[p]);
  return out;
}

std::vector<IntVec> SymmetryGroup::curve_images(const IntVec& c) const { return images(c, true); }
std::vector<IntVec> SymmetryGroup::divisor_images(const IntVec& d) const { return images(d, false); }

namespace {

std::vector<std::size_t> least_image(const std::vector<SymmetryGroup::Element>& elements,
                                     const std::vector<std::size_t>& ids, bool curve) {
  std::vector<std::size_t> best, cur(ids.size());
  for (const auto& e : elements) {
    const auto& perm = curve ? e.curve_perm : e.divisor_perm;
    for (std::size_t i = 0; i < ids.size(); ++i) cur[i] = perm[ids[i]];
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

}  // namespace

std::vector<std::size_t> SymmetryGroup::canonical_curve_set(const std::vector<std::size_t>& ids) const {
  if (ids.empty()) return {};
  return least_image(elements_, ids, true);
}

std::vector<std::size_t> SymmetryGroup::canonical_divisor_set(const std::vector<std::size_t>& ids) const {
  if (ids.empty()) return {};
  return least_image(elements_, ids, false);
}

std::vector<std::vector<std::size_t>> SymmetryGroup::curve_orbits() const {
  const std::size_t m = elements_.front().curve_perm.size();
  UnionFind uf(m);
  for (const auto& e : elements_) {
    for (std::size_t i = 0; i < m; ++i) uf.join(i, e.curve_perm[i]);
  }
  return uf.classes();
}

std::vector<std::vector<std::size_t>> SymmetryGroup::divisor_orbits() const {
  const std::size_t m = elements_.front().divisor_perm.size();
  UnionFind uf(m);
  for (const auto& e : elements_) {
    for (std::size_t i = 0; i < m; ++i) uf.join(i, e.divisor_perm[i]);
  }
  return uf.classes();
}

namespace {

std::vector<std::vector<std::size_t>> orbits_of(const SymmetryGroup& g, const std::vector<IntVec>& vs,
                                                bool curve) {
  std::map<IntVec, std::size_t> first;
  UnionFind uf(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto [it, fresh] = first.emplace(vs[i], i);
    if (!fresh) uf.join(i, it->second);
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (const auto& img : curve ? g.curve_images(vs[i]) : g.divisor_images(vs[i])) {
      auto it = first.find(img);
      if (it != first.end()) uf.join(i, it->second);
    }
  }
  return uf.classes();
}

}  // namespace

std::vector<std::vector<std::size_t>> SymmetryGroup::orbits_of_curves(const std::vector<IntVec>& cs) const {
  return orbits_of(*this, cs, true);
}

std::vector<std::vector<std::size_t>> SymmetryGroup::orbits_of_divisors(const std::vector<IntVec>& ds) const {
  return orbits_of(*this, ds, false);
}

}  // namespace negcone
