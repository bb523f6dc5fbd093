#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "twistkit/error.hpp"
#include "twistkit/index_set.hpp"
#include "twistkit/monomial.hpp"
#include "twistkit/param_poly.hpp"

namespace twistkit {

/// Variables of P(V) for one d: X0..X3, then Y_(i,j) in the order of I_d, then Z.
class VarLayout {
 public:
  explicit VarLayout(int d) : ix_(d) {}

  int d() const noexcept { return ix_.d(); }
  const IndexSet& index_set() const noexcept { return ix_; }

  static std::size_t x(int l) { return static_cast<std::size_t>(l); }
  std::size_t y(int i, int j) const { return 4 + ix_.position_in_I(i, j); }
  std::size_t z() const noexcept { return 4 + ix_.I().size(); }
  std::size_t count() const noexcept { return z() + 1; }

  bool is_x(std::size_t v) const noexcept { return v < 4; }
  bool is_y(std::size_t v) const noexcept { return v >= 4 && v < z(); }
  bool is_z(std::size_t v) const noexcept { return v == z(); }
  Index y_index(std::size_t v) const { return ix_.I().at(v - 4); }

  std::string name(std::size_t v) const {
    if (is_x(v)) return "X" + std::to_string(v);
    if (is_z(v)) return "Z";
    if (is_y(v)) return "Y" + to_string(y_index(v));
    throw StructuralError("variable index out of range");
  }

 private:
  IndexSet ix_;
};

using LayoutPtr = std::shared_ptr<const VarLayout>;

/// Sparse polynomial in the variables of a VarLayout with ParamPoly coefficients.
class Poly {
 public:
  using Terms = std::map<Monomial, ParamPoly>;

  explicit Poly(LayoutPtr layout) : layout_(std::move(layout)) {}

  static Poly monomial(LayoutPtr layout, const Monomial& m, ParamPoly c = ParamPoly(1)) {
    Poly p(std::move(layout));
    p.add_term(m, c);
    return p;
  }
  static Poly variable(LayoutPtr layout, std::size_t v) { return monomial(std::move(layout), Monomial::variable(v)); }

  const LayoutPtr& layout() const noexcept { return layout_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Monomial& m, const ParamPoly& c) {
    if (c.is_zero()) return;
    auto [it, ins] = terms_.try_emplace(m, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.layout_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  friend Poly operator*(Poly a, const ParamPoly& c) {
    Poly r(a.layout_);
    for (const auto& [m, k] : a.terms_) r.add_term(m, k * c);
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// -1 for the zero polynomial, the common degree if homogeneous, else throws.
  int homogeneous_degree() const {
    int deg = -1;
    for (const auto& [m, c] : terms_) {
      int dm = static_cast<int>(m.degree());
      if (deg >= 0 && dm != deg) throw StructuralError("polynomial is not homogeneous");
      deg = dm;
    }
    return deg;
  }

  Poly derivative(std::size_t v) const {
    Poly r(layout_);
    for (const auto& [m, c] : terms_) {
      unsigned e = m.exponent(v);
      if (e == 0) continue;
      Monomial rest = *m.divided_by(Monomial::variable(v));
      r.add_term(rest, c * static_cast<long>(e));
    }
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      const auto& [m, c] = *it;
      bool unit = c == ParamPoly(1);
      if (!unit) os << (c.term_count() > 1 ? "(" + c.to_string() + ")" : c.to_string());
      if (m.is_one()) {
        if (unit) os << "1";
        continue;
      }
      bool first_var = unit;
      for (const auto& [v, e] : m.factors()) {
        if (!first_var) os << "*";
        first_var = false;
        os << layout_->name(v);
        if (e != 1) os << "^" << e;
      }
    }
    return os.str();
  }

 private:
  void check(const Poly& o) const {
    if (layout_ != o.layout_ && layout_->d() != o.layout_->d())
      throw StructuralError("polynomials over different layouts");
  }

  LayoutPtr layout_;
  Terms terms_;
};

/// X0^a X1^b X2^c X3^e as a monomial.
inline Monomial x_monomial(int a, int b, int c, int e) {
  if (a < 0 || b < 0 || c < 0 || e < 0) throw StructuralError("negative exponent in X-monomial");
  return Monomial::from_dense({static_cast<unsigned>(a), static_cast<unsigned>(b), static_cast<unsigned>(c),
                               static_cast<unsigned>(e)});
}

}  // namespace twistkit
