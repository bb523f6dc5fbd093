#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace twistkit {

/// Sparse power product: sorted (variable, exponent) pairs with positive
/// exponents. Variable indices are positions in whatever alphabet the owning
/// polynomial uses; the monomial itself does not know the alphabet size.
class Monomial {
 public:
  using Var = std::uint16_t;
  using Exp = std::uint16_t;
  using Factor = std::pair<Var, Exp>;

  Monomial() = default;

  static Monomial variable(std::size_t var, unsigned exp = 1) {
    Monomial m;
    if (exp > 0) m.factors_.emplace_back(static_cast<Var>(var), static_cast<Exp>(exp));
    return m;
  }

  /// From dense exponents (index = variable).
  static Monomial from_dense(std::initializer_list<unsigned> exps) {
    return from_dense(std::vector<unsigned>(exps));
  }
  static Monomial from_dense(const std::vector<unsigned>& exps) {
    Monomial m;
    for (std::size_t v = 0; v < exps.size(); ++v)
      if (exps[v] > 0) m.factors_.emplace_back(static_cast<Var>(v), static_cast<Exp>(exps[v]));
    return m;
  }

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }

  unsigned exponent(std::size_t var) const noexcept {
    for (const auto& [v, e] : factors_) {
      if (v == var) return e;
      if (v > var) break;
    }
    return 0;
  }

  unsigned degree() const noexcept {
    unsigned s = 0;
    for (const auto& f : factors_) s += f.second;
    return s;
  }

  /// Degree restricted to variables in [first, last).
  unsigned degree_in(std::size_t first, std::size_t last) const noexcept {
    unsigned s = 0;
    for (const auto& [v, e] : factors_)
      if (v >= first && v < last) s += e;
    return s;
  }

  std::size_t max_var_plus_one() const noexcept {
    return factors_.empty() ? 0 : std::size_t(factors_.back().first) + 1;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors_.size() && j < b.factors_.size()) {
      if (a.factors_[i].first == b.factors_[j].first) {
        r.factors_.emplace_back(a.factors_[i].first,
                                static_cast<Exp>(a.factors_[i].second + b.factors_[j].second));
        ++i;
        ++j;
      } else if (a.factors_[i].first < b.factors_[j].first) {
        r.factors_.push_back(a.factors_[i++]);
      } else {
        r.factors_.push_back(b.factors_[j++]);
      }
    }
    for (; i < a.factors_.size(); ++i) r.factors_.push_back(a.factors_[i]);
    for (; j < b.factors_.size(); ++j) r.factors_.push_back(b.factors_[j]);
    return r;
  }

  /// this / other when other divides this.
  std::optional<Monomial> divided_by(const Monomial& other) const {
    Monomial r;
    std::size_t i = 0;
    for (const auto& [v, e] : other.factors_) {
      while (i < factors_.size() && factors_[i].first < v) r.factors_.push_back(factors_[i++]);
      if (i == factors_.size() || factors_[i].first != v || factors_[i].second < e) return std::nullopt;
      if (factors_[i].second > e) r.factors_.emplace_back(v, static_cast<Exp>(factors_[i].second - e));
      ++i;
    }
    for (; i < factors_.size(); ++i) r.factors_.push_back(factors_[i]);
    return r;
  }

  /// Largest monomial dividing both.
  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < a.factors_.size() && j < b.factors_.size()) {
      if (a.factors_[i].first == b.factors_[j].first) {
        r.factors_.emplace_back(a.factors_[i].first, std::min(a.factors_[i].second, b.factors_[j].second));
        ++i;
        ++j;
      } else if (a.factors_[i].first < b.factors_[j].first) {
        ++i;
      } else {
        ++j;
      }
    }
    return r;
  }

  /// Lexicographic comparison with variable 0 most significant.
  static int compare(const Monomial& a, const Monomial& b) noexcept {
    std::size_t i = 0, j = 0;
    while (i < a.factors_.size() && j < b.factors_.size()) {
      const auto& fa = a.factors_[i];
      const auto& fb = b.factors_[j];
      if (fa.first == fb.first) {
        if (fa.second != fb.second) return fa.second < fb.second ? -1 : 1;
        ++i;
        ++j;
      } else {
        return fa.first < fb.first ? 1 : -1;
      }
    }
    if (i < a.factors_.size()) return 1;
    if (j < b.factors_.size()) return -1;
    return 0;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.factors_ == b.factors_; }
  friend bool operator<(const Monomial& a, const Monomial& b) noexcept { return compare(a, b) < 0; }

 private:
  std::vector<Factor> factors_;
};

}  // namespace twistkit
