#include "negcone/catalog.hpp"

#include <algorithm>
#include <set>

namespace negcone {

std::string to_string(SpaceId id) { return id == SpaceId::M05 ? "m05" : "m06"; }

SpaceId parse_space_id(const std::string& text) {
  if (text == "m05") return SpaceId::M05;
  if (text == "m06") return SpaceId::M06;
  throw std::invalid_argument("unknown space '" + text + "' (expected m05 or m06)");
}

namespace {

// Basis positions for n = 6.
std::size_t pos6(int i) { return static_cast<std::size_t>(i); }
std::size_t pos6(int i, int j) {
  if (i > j) std::swap(i, j);
  static const int offset[] = {0, 0, 4, 7, 9};  // pairs starting at 1, 2, 3, 4
  return 6 + static_cast<std::size_t>(offset[i] + (j - i - 1));
}
// n = 5: E0..E3.
std::size_t pos5(int i) { return static_cast<std::size_t>(1 + i); }

std::vector<int> complement(const std::vector<int>& s, int n) {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i) {
    if (std::find(s.begin(), s.end(), i) == s.end()) out.push_back(i);
  }
  return out;
}

IntVec plane_class(int k, int l, int m) {
  IntVec v(16);
  v[0] = 1;
  v[pos6(k)] = v[pos6(l)] = v[pos6(m)] = -1;
  v[pos6(k, l)] = v[pos6(k, m)] = v[pos6(l, m)] = -1;
  return v;
}

std::string join_digits(const std::vector<int>& s) {
  std::string out;
  for (int x : s) out += std::to_string(x);
  return out;
}

}  // namespace

std::vector<int> canonical_boundary_label(SpaceId id, std::vector<int> s) {
  const int n = id == SpaceId::M05 ? 5 : 6;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int x : s) {
    if (x < 1 || x > n) throw std::invalid_argument("boundary label entry out of range");
  }
  if (s.size() < 2 || static_cast<int>(s.size()) > n - 2) {
    throw std::invalid_argument("boundary label must have between 2 and n-2 markings");
  }
  if (id == SpaceId::M05) {
    if (s.size() == 3) s = complement(s, 5);
    return s;
  }
  if (s.size() == 4) s = complement(s, 6);
  if (s.size() == 3 && s.back() != 6) s = complement(s, 6);
  return s;
}

IntVec boundary_class(SpaceId id, std::vector<int> subset) {
  const auto s = canonical_boundary_label(id, std::move(subset));
  if (id == SpaceId::M05) {
    IntVec v(5);
    if (s[1] == 5) {
      v[pos5(s[0] - 1)] = 1;
    } else {
      const auto rest = complement(s, 4);
      v[0] = 1;
      v[pos5(rest[0] - 1)] = -1;
      v[pos5(rest[1] - 1)] = -1;
    }
    return v;
  }
  IntVec v(16);
  if (s.size() == 3) {
    v[pos6(s[0], s[1])] = 1;
  } else if (s[1] == 6) {
    v[pos6(s[0])] = 1;
  } else {
    const auto t = complement(s, 5);
    return plane_class(t[0], t[1], t[2]);
  }
  return v;
}

std::vector<std::vector<int>> boundary_labels(SpaceId id) {
  std::vector<std::vector<int>> out;
  if (id == SpaceId::M05) {
    for (int i = 1; i <= 4; ++i) out.push_back({i, 5});
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) out.push_back(complement({i + 1, j + 1}, 4));
    }
    return out;
  }
  for (int i = 1; i <= 5; ++i) out.push_back({i, 6});
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) out.push_back({i, j, 6});
  }
  for (int k = 1; k <= 5; ++k) {
    for (int l = k + 1; l <= 5; ++l) {
      for (int m = l + 1; m <= 5; ++m) out.push_back(complement({k, l, m}, 5));
    }
  }
  return out;
}

IntVec keel_vermiere_class(int i, int j, int k, int h) {
  IntVec v(16);
  v[0] = 2;
  for (int a = 1; a <= 5; ++a) v[pos6(a)] = -1;
  v[pos6(i, k)] -= 1;
  v[pos6(i, h)] -= 1;
  v[pos6(j, k)] -= 1;
  v[pos6(j, h)] -= 1;
  return v;
}

long long Space::pair(const IntVec& d, const IntVec& c) const {
  if (d.size() != rank || c.size() != rank) throw DimensionMismatch("pair: basis mismatch");
  long long s = 0;
  for (std::size_t i = 0; i < rank; ++i) s += pairing[i] * d[i] * c[i];
  return s;
}

Rational Space::pair(const Vec& d, const Vec& c) const {
  if (d.size() != rank || c.size() != rank) throw DimensionMismatch("pair: basis mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < rank; ++i) {
    if (d[i] != 0 && c[i] != 0) s += pairing[i] * d[i] * c[i];
  }
  return s;
}

Vec Space::functional(const IntVec& c) const { return functional(to_vec(c)); }

Vec Space::functional(const Vec& c) const {
  if (c.size() != rank) throw DimensionMismatch("functional: basis mismatch");
  Vec f(rank);
  for (std::size_t i = 0; i < rank; ++i) f[i] = pairing[i] * c[i];
  return f;
}

Vec Space::curve_of_functional(const Vec& f) const { return functional(f); }

void Space::rebuild_table() {
  table.assign(divisors.size(), std::vector<long long>(curves.size()));
  for (std::size_t d = 0; d < divisors.size(); ++d) {
    for (std::size_t c = 0; c < curves.size(); ++c) table[d][c] = pair(divisors[d].cls, curves[c].cls);
  }
}

std::size_t Space::curve_index(const std::string& name) const {
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].name == name) return i;
  }
  const Vec v = parse_curve(*this, name);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curve_vec(i) == v) return i;
  }
  throw std::invalid_argument("no catalog curve " + name);
}

std::size_t Space::divisor_index(const std::string& name) const {
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (divisors[i].name == name) return i;
  }
  const Vec v = parse_divisor(*this, name);
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (divisor_vec(i) == v) return i;
  }
  throw std::invalid_argument("no catalog divisor " + name);
}

namespace {

void add_curve(Space& s, IntVec cls, std::size_t swept) {
  NegativeCurve c;
  c.cls = std::move(cls);
  c.swept = swept;
  c.name = format_curve(s, to_vec(c.cls));
  s.curves.push_back(std::move(c));
}

Space build_m05() {
  Space s;
  s.id = SpaceId::M05;
  s.n = 5;
  s.rank = 5;
  s.divisor_basis = {"H", "E0", "E1", "E2", "E3"};
  s.curve_basis = {"l", "e0", "e1", "e2", "e3"};
  s.pairing = {1, -1, -1, -1, -1};
  for (const auto& label : boundary_labels(SpaceId::M05)) {
    DivisorGen g;
    g.kind = DivisorKind::Boundary;
    g.label = label;
    g.cls = boundary_class(SpaceId::M05, label);
    g.name = format_divisor(s, to_vec(g.cls));
    s.divisors.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < s.divisors.size(); ++i) add_curve(s, s.divisors[i].cls, i);
  s.rebuild_table();
  return s;
}

Space build_m06() {
  Space s;
  s.id = SpaceId::M06;
  s.n = 6;
  s.rank = 16;
  s.divisor_basis = {"H"};
  s.curve_basis = {"l"};
  for (int i = 1; i <= 5; ++i) {
    s.divisor_basis.push_back("E" + std::to_string(i));
    s.curve_basis.push_back("e" + std::to_string(i));
  }
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      s.divisor_basis.push_back("E" + std::to_string(i) + std::to_string(j));
      s.curve_basis.push_back("e" + std::to_string(i) + std::to_string(j));
    }
  }
  s.pairing.assign(16, -1);
  s.pairing[0] = 1;

  std::map<std::vector<int>, std::size_t> plane_of;  // sorted triple -> index
  for (const auto& label : boundary_labels(SpaceId::M06)) {
    DivisorGen g;
    g.kind = DivisorKind::Boundary;
    g.label = label;
    g.cls = boundary_class(SpaceId::M06, label);
    if (label.size() == 3) {
      g.name = "E" + join_digits({label[0], label[1]});
    } else if (label[1] == 6) {
      g.name = "E" + std::to_string(label[0]);
    } else {
      const auto t = complement(label, 5);
      g.name = "D" + join_digits(t);
      plane_of[t] = s.divisors.size();
    }
    s.divisors.push_back(std::move(g));
  }
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      for (int k = i + 1; k <= 5; ++k) {
        if (k == j) continue;
        for (int h = k + 1; h <= 5; ++h) {
          if (h == j) continue;
          DivisorGen g;
          g.kind = DivisorKind::KeelVermiere;
          g.label = {i, j, k, h};
          g.cls = keel_vermiere_class(i, j, k, h);
          g.name = "KV" + join_digits({i, j}) + "," + join_digits({k, h});
          s.divisors.push_back(std::move(g));
        }
      }
    }
  }

  auto e_index = [](int i) { return static_cast<std::size_t>(i - 1); };
  auto eij_index = [](int i, int j) { return 5 + (pos6(i, j) - 6); };
  auto unit = [](std::initializer_list<std::pair<std::size_t, long long>> terms) {
    IntVec v(16);
    for (const auto& [p, c] : terms) v[p] += c;
    return v;
  };

  // Curves on E_i.
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      if (j != i) add_curve(s, unit({{pos6(i), 1}, {pos6(i, j), -1}}), e_index(i));
    }
  }
  for (int i = 1; i <= 5; ++i) {
    IntVec v(16);
    v[pos6(i)] = 2;
    for (int j = 1; j <= 5; ++j) {
      if (j != i) v[pos6(i, j)] = -1;
    }
    add_curve(s, v, e_index(i));
  }
  // Curves on the planes D_ijk.
  std::vector<std::vector<int>> triples;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      for (int k = j + 1; k <= 5; ++k) triples.push_back({i, j, k});
    }
  }
  for (const auto& t : triples) {
    for (int a = 0; a < 3; ++a) {
      const int i = t[a], j = t[(a + 1) % 3], k = t[(a + 2) % 3];
      add_curve(s, unit({{0, 1}, {pos6(i), -1}, {pos6(j, k), -1}}), plane_of.at(t));
    }
  }
  for (const auto& t : triples) {
    const auto hl = complement(t, 5);
    add_curve(s,
              unit({{0, 2}, {pos6(t[0]), -1}, {pos6(t[1]), -1}, {pos6(t[2]), -1},
                    {pos6(hl[0], hl[1]), -1}}),
              plane_of.at(t));
  }
  for (const auto& t : triples) {
    const auto hl = complement(t, 5);
    add_curve(s,
              unit({{0, 1}, {pos6(t[0], t[1]), -1}, {pos6(t[0], t[2]), -1},
                    {pos6(t[1], t[2]), -1}, {pos6(hl[0], hl[1]), -1}}),
              plane_of.at(t));
  }
  // Curves on E_ij.
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) add_curve(s, unit({{pos6(i, j), 1}}), eij_index(i, j));
  }
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      add_curve(s, unit({{0, 1}, {pos6(i), -1}, {pos6(j), -1}, {pos6(i, j), 1}}), eij_index(i, j));
    }
  }
  s.rebuild_table();
  return s;
}

}  // namespace

Space build_space(SpaceId id) { return id == SpaceId::M05 ? build_m05() : build_m06(); }

Space build_space(int n) {
  if (n == 5) return build_m05();
  if (n == 6) return build_m06();
  throw std::invalid_argument("unsupported marking count " + std::to_string(n));
}

std::vector<bool> unimodality_flags(const Space& space) {
  std::vector<bool> out(space.curves.size(), true);
  for (std::size_t c = 0; c < space.curves.size(); ++c) {
    const long long self = space.table[space.curves[c].swept][c];
    for (std::size_t d = 0; d < space.divisors.size(); ++d) {
      if (d == space.curves[c].swept) continue;
      const long long v = space.table[d][c];
      if (v != 0 && v != -self) out[c] = false;
    }
  }
  return out;
}

std::vector<InvariantViolation> validate_catalog(const Space& space) {
  std::vector<InvariantViolation> out;
  for (const auto& c : space.curves) {
    if (c.cls.size() != space.rank) out.push_back({"shape", "curve " + c.name + " has wrong length"});
    if (c.swept >= space.divisors.size()) out.push_back({"shape", "curve " + c.name + " sweeps unknown divisor"});
  }
  for (const auto& d : space.divisors) {
    if (d.cls.size() != space.rank) out.push_back({"shape", "divisor " + d.name + " has wrong length"});
  }
  if (!out.empty()) return out;

  for (std::size_t c = 0; c < space.curves.size(); ++c) {
    const auto& curve = space.curves[c];
    const long long self = space.table[curve.swept][c];
    if (self >= 0) {
      out.push_back({"sign-pattern", curve.name + " . " + space.divisors[curve.swept].name + " = " +
                                         std::to_string(self) + " is not negative"});
    }
    for (std::size_t d = 0; d < space.divisors.size(); ++d) {
      if (d == curve.swept || space.table[d][c] >= 0) continue;
      out.push_back({"effective-on-restriction", space.divisors[d].name + " . " + curve.name + " = " +
                                                     std::to_string(space.table[d][c])});
    }
  }

  for (const auto& d : space.divisors) {
    IntVec expect;
    if (d.kind == DivisorKind::Boundary) {
      try {
        expect = boundary_class(space.id, d.label);
      } catch (const std::exception& e) {
        out.push_back({"dictionary", d.name + ": " + e.what()});
        continue;
      }
    } else {
      if (d.label.size() != 4) {
        out.push_back({"dictionary", d.name + ": malformed label"});
        continue;
      }
      expect = keel_vermiere_class(d.label[0], d.label[1], d.label[2], d.label[3]);
    }
    if (expect != d.cls) out.push_back({"dictionary", d.name + " does not match its label"});
  }

  for (int t = 1; t < space.n; ++t) {
    Perm p(space.n);
    for (int i = 0; i < space.n; ++i) p[i] = i + 1;
    std::swap(p[t - 1], p[t]);
    try {
      (void)s_action(space.id, p);
    } catch (const CatalogError& e) {
      out.push_back({"dictionary", e.what()});
    }
  }
  return out;
}

}  // namespace negcone
