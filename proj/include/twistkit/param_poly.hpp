#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistkit/error.hpp"
#include "twistkit/index_set.hpp"
#include "twistkit/monomial.hpp"
#include "twistkit/rational.hpp"

namespace twistkit {

/// The generic constants of the gamma table for one degree d, in a fixed
/// order:  C_(i,j) for (i,j) in I_d with i,j <= d-2 (lex), C_2 .. C_{d-1},
/// C_1a, C_1b, C_za, C_zb.  Names outside this list are rejected.
class ParamAlphabet {
 public:
  explicit ParamAlphabet(int d) : d_(d) {
    IndexSet ix(d);
    for (const auto& [i, j] : ix.I())
      if (i <= d - 2 && j <= d - 2) add(pair_name(i, j));
    for (int j = 2; j <= d - 1; ++j) add("C_" + std::to_string(j));
    for (const char* n : {"C_1a", "C_1b", "C_za", "C_zb"}) add(n);
  }

  /// Shared instance per degree; ParamPolys compare alphabets by identity.
  static std::shared_ptr<const ParamAlphabet> for_degree(int d) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const ParamAlphabet>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[d];
    if (!slot) slot = std::make_shared<const ParamAlphabet>(d);
    return slot;
  }

  static std::string pair_name(int i, int j) {
    return "C_(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }

  int d() const noexcept { return d_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t var) const { return names_.at(var); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(const std::string& name) const {
    if (auto v = find(name)) return *v;
    throw UnknownParameter(name);
  }

 private:
  void add(std::string n) {
    index_.emplace(n, names_.size());
    names_.push_back(std::move(n));
  }

  int d_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using AlphabetPtr = std::shared_ptr<const ParamAlphabet>;

/// Values for (some of) the parameters, keyed by name.
using Assignment = std::map<std::string, Rational>;

/// Sparse polynomial in the generic constants with rational coefficients.
/// Terms are kept in lexicographic order (variable 0 most significant); no
/// zero coefficient is ever stored. A polynomial without an alphabet is a
/// constant and combines with polynomials over any alphabet.
class ParamPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  ParamPoly() = default;
  ParamPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(Monomial{}, c);
  }
  ParamPoly(long c) : ParamPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  ParamPoly(int c) : ParamPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static ParamPoly variable(AlphabetPtr alphabet, const std::string& name) {
    std::size_t v = alphabet->index(name);
    return variable(std::move(alphabet), v);
  }
  static ParamPoly variable(AlphabetPtr alphabet, std::size_t var) {
    if (var >= alphabet->size()) throw StructuralError("parameter index out of range");
    ParamPoly p;
    p.alphabet_ = std::move(alphabet);
    p.terms_.emplace(Monomial::variable(var), Rational(1));
    return p;
  }
  static ParamPoly term(AlphabetPtr alphabet, Monomial m, Rational c) {
    ParamPoly p;
    p.alphabet_ = std::move(alphabet);
    if (c != 0) p.terms_.emplace(std::move(m), std::move(c));
    return p;
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  Rational constant_value() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  unsigned total_degree() const noexcept {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
  }
  const std::pair<const Monomial, Rational>& leading_term() const {
    if (terms_.empty()) throw InvariantViolation("leading term of zero polynomial");
    return *terms_.rbegin();
  }

  ParamPoly& operator+=(const ParamPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  ParamPoly& operator-=(const ParamPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  ParamPoly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
  }
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator-(ParamPoly a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }
  friend ParamPoly operator*(ParamPoly a, const Rational& c) { return a *= c; }
  friend ParamPoly operator*(const Rational& c, ParamPoly a) { return a *= c; }
  friend ParamPoly operator*(ParamPoly a, long c) { return a *= Rational(c); }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    r.alphabet_ = merged_alphabet(a, b);
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
    if (a.alphabet_ && b.alphabet_ && a.alphabet_ != b.alphabet_ && a.alphabet_->d() != b.alphabet_->d() &&
        !(a.is_constant() && b.is_constant()))
      throw StructuralError("comparing parameter polynomials over different alphabets");
    return a.terms_ == b.terms_;
  }

  /// Exact quotient this / divisor, or nullopt when divisor does not divide.
  std::optional<ParamPoly> divide_exact(const ParamPoly& divisor) const {
    if (divisor.is_zero()) throw PreconditionError("division by the zero polynomial");
    ParamPoly rem = *this;
    rem.adopt(divisor);
    ParamPoly quot;
    quot.alphabet_ = rem.alphabet_;
    const auto& [dm, dc] = divisor.leading_term();
    while (!rem.is_zero()) {
      const auto& [rm, rc] = rem.leading_term();
      auto qm = rm.divided_by(dm);
      if (!qm) return std::nullopt;
      Rational qc = rc / dc;
      Monomial qmono = *qm;
      quot.add_term(qmono, qc);
      for (const auto& [m, c] : divisor.terms_) rem.add_term(qmono * m, -qc * c);
    }
    return quot;
  }

  /// Exact evaluation; every parameter occurring in the polynomial must be
  /// assigned.
  Rational evaluate(const Assignment& values) const {
    std::vector<std::optional<Rational>> dense = dense_values(values);
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [v, e] : m.factors()) {
        if (!dense[v]) throw PreconditionError("parameter '" + alphabet_->name(v) + "' is not assigned");
        Rational p = 1;
        for (unsigned k = 0; k < e; ++k) p *= *dense[v];
        t *= p;
      }
      sum += t;
    }
    return sum;
  }

  /// Substitutes the assigned parameters and keeps the others symbolic.
  ParamPoly substitute(const Assignment& values) const {
    std::vector<std::optional<Rational>> dense = dense_values(values);
    ParamPoly r;
    r.alphabet_ = alphabet_;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      std::vector<Monomial::Factor> kept;
      for (const auto& [v, e] : m.factors()) {
        if (dense[v]) {
          for (unsigned k = 0; k < e; ++k) t *= *dense[v];
        } else {
          kept.emplace_back(v, e);
        }
      }
      Monomial rest;
      for (const auto& [v, e] : kept) rest = rest * Monomial::variable(v, e);
      r.add_term(rest, t);
    }
    return r;
  }

  /// Variables (by index) that occur with nonzero exponent.
  std::vector<std::size_t> support() const {
    std::vector<bool> seen;
    for (const auto& t : terms_)
      for (const auto& [v, e] : t.first.factors()) {
        if (seen.size() <= v) seen.resize(v + 1, false);
        seen[v] = true;
      }
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < seen.size(); ++v)
      if (seen[v]) out.push_back(v);
    return out;
  }

  /// Largest monomial dividing every term (1 for the zero polynomial).
  Monomial monomial_content() const {
    if (terms_.empty()) return {};
    Monomial g = terms_.begin()->first;
    for (const auto& t : terms_) g = Monomial::gcd(g, t.first);
    return g;
  }

  /// Positive rational c such that this / c has coprime integer coefficients.
  Rational content() const {
    if (terms_.empty()) return 1;
    Integer num = 0, den = 1;
    for (const auto& t : terms_) {
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.second.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool unit = (mag == 1) && !m.is_one();
      if (!unit) os << mag.get_str();
      bool star = !unit;
      for (const auto& [v, e] : m.factors()) {
        if (star) os << '*';
        star = true;
        os << var_name(v);
        if (e > 1) os << '^' << e;
      }
    }
    return os.str();
  }

  std::string var_name(std::size_t v) const {
    return alphabet_ ? alphabet_->name(v) : "p" + std::to_string(v);
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  static AlphabetPtr merged_alphabet(const ParamPoly& a, const ParamPoly& b) {
    if (!a.alphabet_) return b.alphabet_;
    if (!b.alphabet_ || a.alphabet_ == b.alphabet_) return a.alphabet_;
    if (a.alphabet_->d() == b.alphabet_->d()) return a.alphabet_;
    throw StructuralError("parameter polynomials for d = " + std::to_string(a.alphabet_->d()) + " and d = " +
                          std::to_string(b.alphabet_->d()) + " cannot be combined");
  }
  void adopt(const ParamPoly& o) { alphabet_ = merged_alphabet(*this, o); }

  std::vector<std::optional<Rational>> dense_values(const Assignment& values) const {
    std::vector<std::optional<Rational>> dense(alphabet_ ? alphabet_->size() : 0);
    for (const auto& [name, val] : values) {
      if (!alphabet_) continue;
      dense[alphabet_->index(name)] = val;
    }
    if (!alphabet_ && !is_constant()) throw StructuralError("polynomial without alphabet has variables");
    return dense;
  }

  AlphabetPtr alphabet_;
  Terms terms_;
};

inline std::string to_string(const ParamPoly& p) { return p.to_string(); }

}  // namespace twistkit
