#include "negcone/cone.hpp"

#include <stdexcept>

namespace negcone {

namespace {

// Dense phase-one simplex for G lambda = t, lambda >= 0, with Bland's rule.
// Column layout: generators, then one artificial per row, then the rhs.
class PhaseOne {
 public:
  PhaseOne(const Vec& target, std::span<const Vec> gens)
      : m_(target.size()), n_(gens.size()), width_(n_ + m_ + 1), sign_(m_, 1) {
    tab_.assign(m_, Vec(width_));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (target[i] < 0) sign_[i] = -1;
      for (std::size_t j = 0; j < n_; ++j) {
        if (gens[j][i] != 0) tab_[i][j] = sign_[i] * gens[j][i];
      }
      tab_[i][n_ + i] = 1;
      tab_[i][width_ - 1] = sign_[i] * target[i];
      basis_[i] = n_ + i;
    }
    cost_.assign(width_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (tab_[i][j] != 0) cost_[j] -= tab_[i][j];
      }
      cost_[width_ - 1] -= tab_[i][width_ - 1];
    }
  }

  void run() {
    for (;;) {
      std::size_t enter = width_;
      for (std::size_t j = 0; j + 1 < width_; ++j) {
        if (cost_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == width_) return;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        Rational ratio = tab_[i][width_ - 1] / tab_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      // Phase one is bounded below by zero, so an entering column always has
      // a positive entry.
      if (leave == m_) throw std::logic_error("phase one unbounded");
      pivot(leave, enter);
    }
  }

  bool feasible() const { return cost_[width_ - 1] == 0; }

  std::vector<Rational> weights() const {
    std::vector<Rational> w(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) w[basis_[i]] = tab_[i][width_ - 1];
    }
    return w;
  }

  // Optimal duals of the sign-adjusted system give y with y.G <= 0 and
  // y.t > 0; the separator is -y in the original row signs.
  Vec separator() const {
    Vec s(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      Rational y = 1 - cost_[n_ + i];
      s[i] = -(sign_[i] * y);
    }
    return s;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / tab_[r][c];
    for (auto& x : tab_[r]) {
      if (x != 0) x *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width_; ++j) {
      if (tab_[r][j] != 0) nz.push_back(j);
    }
    auto eliminate = [&](Vec& row) {
      if (row[c] == 0) return;
      const Rational f = row[c];
      for (auto j : nz) row[j] -= f * tab_[r][j];
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != r) eliminate(tab_[i]);
    }
    eliminate(cost_);
    basis_[r] = c;
  }

  std::size_t m_, n_, width_;
  std::vector<int> sign_;
  Matrix tab_;
  Vec cost_;
  std::vector<std::size_t> basis_;
};

void verify(const FarkasAnswer& ans, const Vec& target, std::span<const Vec> gens) {
  if (ans.combination) {
    Vec sum(target.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const auto& w = (*ans.combination)[j];
      if (w < 0) throw std::logic_error("cone_member: negative weight");
      if (w == 0) continue;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += w * gens[j][i];
    }
    if (sum != target) throw std::logic_error("cone_member: combination does not reconstruct target");
  } else {
    const Vec& s = *ans.separator;
    if (dot(s, target) >= 0) throw std::logic_error("cone_member: separator does not cut target");
    for (const auto& g : gens) {
      if (dot(s, g) < 0) throw std::logic_error("cone_member: separator cuts a generator");
    }
  }
}

}  // namespace

FarkasAnswer cone_member(const Vec& target, std::span<const Vec> generators) {
  for (const auto& g : generators) {
    if (g.size() != target.size()) {
      throw DimensionMismatch("cone_member: generator length " + std::to_string(g.size()) +
                              " vs target length " + std::to_string(target.size()));
    }
  }
  FarkasAnswer ans;
  if (is_zero(target)) {
    ans.combination = std::vector<Rational>(generators.size());
  } else if (generators.empty()) {
    Vec s(target.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = -target[i];
    ans.separator = primitive(s);
  } else {
    PhaseOne lp(target, generators);
    lp.run();
    if (lp.feasible()) {
      ans.combination = lp.weights();
    } else {
      ans.separator = primitive(lp.separator());
    }
  }
  verify(ans, target, generators);
  return ans;
}

}  // namespace negcone
