#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twistkit/artin.hpp"
#include "twistkit/error.hpp"
#include "twistkit/qmatrix.hpp"

namespace twistkit {

/// S0^s0 S1^s1 T0^t0 T1^t1.
struct BiMono {
  int s0 = 0, s1 = 0, t0 = 0, t1 = 0;
  friend auto operator<=>(const BiMono&, const BiMono&) = default;
  friend BiMono operator*(const BiMono& a, const BiMono& b) {
    return {a.s0 + b.s0, a.s1 + b.s1, a.t0 + b.t0, a.t1 + b.t1};
  }
  int s_degree() const noexcept { return s0 + s1; }
  int t_degree() const noexcept { return t0 + t1; }
};

/// Both variables always shown, exponent 1 left implicit: "S0^2 S1^0".
inline std::string binary_monomial(const char* a, int ea, const char* b, int eb) {
  auto one = [](const char* v, int e) { return e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e); };
  return one(a, ea) + " " + one(b, eb);
}

inline std::string to_string(const BiMono& m) {
  return binary_monomial("S0", m.s0, "S1", m.s1) + " · " + binary_monomial("T0", m.t0, "T1", m.t1);
}

namespace detail {
inline std::string coefficient_prefix(const ArtinElement& c, bool first) {
  std::string cs = c.to_string();
  bool single = c.constant().term_count() + c.nilpotent().size() == 1 &&
                (c.nilpotent().empty() || c.nilpotent().begin()->second.term_count() == 1);
  bool neg = single && !cs.empty() && cs[0] == '-';
  std::string out = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
  if (neg) cs = cs.substr(1);
  if (cs == "1") return out;
  return out + (single ? cs : "(" + cs + ")") + "·";
}
}  // namespace detail

/// Bihomogeneous form of bidegree (a, b) on P^1_s x P^1_t with Artin coefficients.
class BiSection {
 public:
  using Terms = std::map<BiMono, ArtinElement>;

  BiSection(int a, int b) : a_(a), b_(b) {}

  int s_degree() const noexcept { return a_; }
  int t_degree() const noexcept { return b_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const BiMono& m, const ArtinElement& c) {
    if (m.s_degree() != a_ || m.t_degree() != b_ || m.s0 < 0 || m.s1 < 0 || m.t0 < 0 || m.t1 < 0)
      throw StructuralError("monomial " + twistkit::to_string(m) + " has wrong bidegree for (" + std::to_string(a_) + "," +
                            std::to_string(b_) + ")");
    if (c.is_zero()) return;
    auto [it, ins] = terms_.try_emplace(m, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  ArtinElement coefficient(const BiMono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ArtinElement() : it->second;
  }

  BiSection& operator+=(const BiSection& o) {
    same_bidegree(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  BiSection& operator-=(const BiSection& o) {
    same_bidegree(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend BiSection operator+(BiSection a, const BiSection& b) { return a += b; }
  friend BiSection operator-(BiSection a, const BiSection& b) { return a -= b; }
  friend BiSection operator*(const BiSection& a, const BiSection& b) {
    BiSection r(a.a_ + b.a_, a.b_ + b.b_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add(ma * mb, ca * cb);
    return r;
  }
  friend BiSection operator*(const BiSection& a, const ArtinElement& k) {
    BiSection r(a.a_, a.b_);
    for (const auto& [m, c] : a.terms_) r.add(m, c * k);
    return r;
  }
  friend bool operator==(const BiSection& a, const BiSection& b) {
    return a.a_ == b.a_ && a.b_ == b.b_ && a.terms_ == b.terms_;
  }

  /// Multiply by a monomial (degrees shift accordingly).
  BiSection shifted(const BiMono& m) const {
    BiSection r(a_ + m.s_degree(), b_ + m.t_degree());
    for (const auto& [k, c] : terms_) r.terms_.emplace(k * m, c);
    return r;
  }

  /// Exact division by S0 (which = 0) or S1 (which = 1).
  BiSection divided_by_s(int which) const {
    BiSection r(a_ - 1, b_);
    for (const auto& [m, c] : terms_) {
      BiMono q = m;
      int& e = which == 0 ? q.s0 : q.s1;
      if (e == 0) throw InvariantViolation("term " + twistkit::to_string(m) + " is not divisible by S" + std::to_string(which));
      --e;
      r.terms_.emplace(q, c);
    }
    return r;
  }

  template <class F>
  BiSection map_coefficients(F&& f) const {
    BiSection r(a_, b_);
    for (const auto& [m, c] : terms_) r.add(m, f(c));
    return r;
  }
  BiSection constant_part() const {
    return map_coefficients([](const ArtinElement& c) { return c.constant_part(); });
  }
  BiSection nilpotent_part() const {
    return map_coefficients([](const ArtinElement& c) { return c.nilpotent_part(); });
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      out += detail::coefficient_prefix(it->second, first) + twistkit::to_string(it->first);
      first = false;
    }
    return out;
  }

 private:
  void same_bidegree(const BiSection& o) const {
    if (a_ != o.a_ || b_ != o.b_) throw StructuralError("adding sections of different bidegree");
  }

  int a_, b_;
  Terms terms_;
};

/// Binary form of fixed degree in S0, S1; terms keyed by the S0 exponent.
/// Negative degree is allowed and then only the zero form exists.
class SForm {
 public:
  using Terms = std::map<int, ArtinElement>;

  SForm() = default;
  explicit SForm(int degree) : deg_(degree) {}
  static SForm monomial(int degree, int e0, const ArtinElement& c) {
    SForm f(degree);
    f.add(e0, c);
    return f;
  }

  int degree() const noexcept { return deg_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(int e0, const ArtinElement& c) {
    if (e0 < 0 || e0 > deg_) throw StructuralError("S0 exponent " + std::to_string(e0) + " outside a degree " + std::to_string(deg_) + " form");
    if (c.is_zero()) return;
    auto [it, ins] = terms_.try_emplace(e0, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  ArtinElement coefficient(int e0) const {
    auto it = terms_.find(e0);
    return it == terms_.end() ? ArtinElement() : it->second;
  }

  SForm& operator+=(const SForm& o) {
    same_degree(o);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  SForm& operator-=(const SForm& o) {
    same_degree(o);
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend SForm operator+(SForm a, const SForm& b) { return a += b; }
  friend SForm operator-(SForm a, const SForm& b) { return a -= b; }
  friend SForm operator-(const SForm& a) { return a * ArtinElement(-1); }
  friend SForm operator*(const SForm& a, const SForm& b) {
    SForm r(a.deg_ + b.deg_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add(ea + eb, ca * cb);
    return r;
  }
  friend SForm operator*(const SForm& a, const ArtinElement& k) {
    SForm r(a.deg_);
    for (const auto& [e, c] : a.terms_) r.add(e, c * k);
    return r;
  }
  friend bool operator==(const SForm& a, const SForm& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.deg_ == b.deg_ && a.terms_ == b.terms_;
  }

  template <class F>
  SForm map_coefficients(F&& f) const {
    SForm r(deg_);
    for (const auto& [e, c] : terms_) r.add(e, f(c));
    return r;
  }

  /// Multiply by S0 (which = 0) or S1 (which = 1).
  SForm times_s(int which) const {
    SForm r(deg_ + 1);
    for (const auto& [e, c] : terms_) r.terms_.emplace(which == 0 ? e + 1 : e, c);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      out += detail::coefficient_prefix(it->second, first) + binary_monomial("S0", it->first, "S1", deg_ - it->first);
      first = false;
    }
    return out;
  }

 private:
  // The zero form takes the degree of whatever is added to it.
  void same_degree(const SForm& o) {
    if (deg_ == o.deg_ || o.is_zero()) return;
    if (!is_zero())
      throw StructuralError("adding binary forms of degree " + std::to_string(deg_) + " and " + std::to_string(o.deg_));
    deg_ = o.deg_;
  }

  int deg_ = 0;
  Terms terms_;
};

/// Sections of O_{P^1 x P^1}(a, b)(-sigma(B)) pushed forward to P^1_s. sigma(B)
/// is {T1 = 0}, so each term loses one T1; the result has b slots, slot j being
/// the coefficient form of T0^j T1^(b-1-j).
inline std::vector<SForm> pushforward_minus_section(const BiSection& f) {
  const int b = f.t_degree();
  if (b < 1) throw PreconditionError("pushforward needs T-degree >= 1");
  std::vector<SForm> out(static_cast<std::size_t>(b), SForm(f.s_degree()));
  for (const auto& [m, c] : f.terms()) {
    if (m.t1 == 0)
      throw PreconditionError("term " + to_string(m) + " does not vanish along T1 = 0");
    out[static_cast<std::size_t>(m.t0)].add(m.s0, c);
  }
  return out;
}

/// Inverse of pushforward_minus_section.
inline BiSection reconstruct_from_pushforward(const std::vector<SForm>& slots, int s_degree) {
  const int b = static_cast<int>(slots.size());
  BiSection f(s_degree, b);
  for (int j = 0; j < b; ++j)
    for (const auto& [e, c] : slots[static_cast<std::size_t>(j)].terms())
      f.add(BiMono{e, s_degree - e, j, b - j}, c);
  return f;
}

/// Ordered list of named summands O(twist).
class TwistedFreeModule {
 public:
  struct Summand {
    std::string name;
    int twist;
  };

  TwistedFreeModule() = default;
  explicit TwistedFreeModule(std::vector<Summand> summands) : summands_(std::move(summands)) {
    for (std::size_t k = 0; k < summands_.size(); ++k)
      if (!index_.emplace(summands_[k].name, k).second)
        throw StructuralError("duplicate summand name " + summands_[k].name);
  }

  std::size_t rank() const noexcept { return summands_.size(); }
  const Summand& operator[](std::size_t k) const { return summands_.at(k); }
  const std::vector<Summand>& summands() const noexcept { return summands_; }
  int twist(std::size_t k) const { return summands_.at(k).twist; }
  const std::string& name(std::size_t k) const { return summands_.at(k).name; }
  std::size_t index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw StructuralError("no summand named " + name);
    return it->second;
  }
  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  friend bool operator==(const TwistedFreeModule& a, const TwistedFreeModule& b) {
    if (a.summands_.size() != b.summands_.size()) return false;
    for (std::size_t k = 0; k < a.summands_.size(); ++k)
      if (a.summands_[k].name != b.summands_[k].name || a.summands_[k].twist != b.summands_[k].twist) return false;
    return true;
  }

 private:
  std::vector<Summand> summands_;
  std::unordered_map<std::string, std::size_t> index_;
};

using ModulePtr = std::shared_ptr<const TwistedFreeModule>;

/// Global section of M(shift): component k is a form of degree twist_k + shift.
class ModuleSection {
 public:
  ModuleSection() = default;
  ModuleSection(ModulePtr module, int shift) : module_(std::move(module)), shift_(shift) {
    comps_.reserve(module_->rank());
    for (std::size_t k = 0; k < module_->rank(); ++k) comps_.emplace_back(module_->twist(k) + shift_);
  }

  const ModulePtr& module() const noexcept { return module_; }
  int shift() const noexcept { return shift_; }
  std::size_t size() const noexcept { return comps_.size(); }
  const SForm& operator[](std::size_t k) const { return comps_.at(k); }
  const SForm& component(const std::string& name) const { return comps_.at(module_->index(name)); }
  const std::vector<SForm>& components() const noexcept { return comps_; }

  void add(std::size_t k, const SForm& f) {
    if (f.is_zero()) return;
    if (f.degree() != module_->twist(k) + shift_)
      throw StructuralError("component " + module_->name(k) + " needs degree " +
                            std::to_string(module_->twist(k) + shift_) + ", got " + std::to_string(f.degree()));
    comps_.at(k) += f;
  }
  void add(const std::string& name, const SForm& f) { add(module_->index(name), f); }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const SForm& f) { return f.is_zero(); });
  }

  ModuleSection& operator+=(const ModuleSection& o) {
    compatible(o);
    for (std::size_t k = 0; k < comps_.size(); ++k) comps_[k] += o.comps_[k];
    return *this;
  }
  ModuleSection& operator-=(const ModuleSection& o) {
    compatible(o);
    for (std::size_t k = 0; k < comps_.size(); ++k) comps_[k] -= o.comps_[k];
    return *this;
  }
  friend ModuleSection operator+(ModuleSection a, const ModuleSection& b) { return a += b; }
  friend ModuleSection operator-(ModuleSection a, const ModuleSection& b) { return a -= b; }
  friend ModuleSection operator-(const ModuleSection& a) { return a.map_coefficients([](const ArtinElement& c) { return -c; }); }

  /// Multiply every component by a form g; the shift grows by deg g.
  friend ModuleSection operator*(const SForm& g, const ModuleSection& x) {
    ModuleSection r(x.module_, x.shift_ + g.degree());
    for (std::size_t k = 0; k < x.comps_.size(); ++k)
      if (!x.comps_[k].is_zero()) r.comps_[k] = g * x.comps_[k];
    return r;
  }

  friend bool operator==(const ModuleSection& a, const ModuleSection& b) {
    if (a.module_ != b.module_ && !(*a.module_ == *b.module_)) return false;
    if (a.shift_ != b.shift_) return a.is_zero() && b.is_zero();
    return a.comps_ == b.comps_;
  }

  template <class F>
  ModuleSection map_coefficients(F&& f) const {
    ModuleSection r(module_, shift_);
    for (std::size_t k = 0; k < comps_.size(); ++k) r.comps_[k] = comps_[k].map_coefficients(f);
    return r;
  }
  ModuleSection constant_part() const {
    return map_coefficients([](const ArtinElement& c) { return c.constant_part(); });
  }
  ModuleSection nilpotent_part() const {
    return map_coefficients([](const ArtinElement& c) { return c.nilpotent_part(); });
  }

  /// "(form)·name + ..." over nonzero components.
  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < comps_.size(); ++k) {
      if (comps_[k].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + comps_[k].to_string() + ")·" + module_->name(k);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void compatible(const ModuleSection& o) const {
    if (module_ != o.module_ && !(*module_ == *o.module_)) throw StructuralError("sections of different modules");
    if (shift_ != o.shift_) throw StructuralError("sections of different twist");
  }

  ModulePtr module_;
  int shift_ = 0;
  std::vector<SForm> comps_;
};

/// Homomorphism between twisted free modules; column k is the image of
/// source summand k, a section of target(-twist_k).
class ModuleMap {
 public:
  ModuleMap(ModulePtr source, ModulePtr target) : src_(std::move(source)), tgt_(std::move(target)) {
    for (std::size_t k = 0; k < src_->rank(); ++k) cols_.emplace_back(tgt_, -src_->twist(k));
  }

  const ModulePtr& source() const noexcept { return src_; }
  const ModulePtr& target() const noexcept { return tgt_; }
  const ModuleSection& column(std::size_t k) const { return cols_.at(k); }
  const ModuleSection& column(const std::string& name) const { return cols_.at(src_->index(name)); }

  void set_column(std::size_t k, ModuleSection image) {
    if (!(*image.module() == *tgt_)) throw StructuralError("column lives in the wrong module");
    if (image.shift() != -src_->twist(k) && !image.is_zero())
      throw StructuralError("column " + src_->name(k) + " has twist " + std::to_string(image.shift()) + ", expected " +
                            std::to_string(-src_->twist(k)));
    cols_.at(k) = std::move(image);
    if (cols_[k].shift() != -src_->twist(k)) cols_[k] = ModuleSection(tgt_, -src_->twist(k));
  }
  void set_column(const std::string& name, ModuleSection image) { set_column(src_->index(name), std::move(image)); }

  ModuleSection apply(const ModuleSection& x) const {
    if (!(*x.module() == *src_)) throw StructuralError("applying a map to a section of another module");
    ModuleSection r(tgt_, x.shift());
    for (std::size_t k = 0; k < src_->rank(); ++k)
      if (!x[k].is_zero()) r += x[k] * cols_[k];
    return r;
  }

  /// Entry-degree audit: every entry has degree target twist - source twist.
  bool degrees_consistent() const {
    for (std::size_t k = 0; k < src_->rank(); ++k) {
      if (cols_[k].shift() != -src_->twist(k)) return false;
      for (std::size_t t = 0; t < tgt_->rank(); ++t) {
        const SForm& e = cols_[k][t];
        if (!e.is_zero() && e.degree() != tgt_->twist(t) - src_->twist(k)) return false;
      }
    }
    return true;
  }

  bool is_zero() const {
    return std::all_of(cols_.begin(), cols_.end(), [](const ModuleSection& c) { return c.is_zero(); });
  }

  template <class F>
  ModuleMap map_coefficients(F&& f) const {
    ModuleMap r(src_, tgt_);
    for (std::size_t k = 0; k < cols_.size(); ++k) r.cols_[k] = cols_[k].map_coefficients(f);
    return r;
  }
  ModuleMap constant_part() const {
    return map_coefficients([](const ArtinElement& c) { return c.constant_part(); });
  }
  ModuleMap nilpotent_part() const {
    return map_coefficients([](const ArtinElement& c) { return c.nilpotent_part(); });
  }

  /// Matrix of the induced map H^0(source(m)) -> H^0(target(m)); needs
  /// rational entries. Basis monomials run over summands in order, S0
  /// exponent descending inside a summand.
  QMatrix global_matrix(int m) const {
    auto src_idx = basis_offsets(*src_, m);
    auto tgt_idx = basis_offsets(*tgt_, m);
    QMatrix a(tgt_idx.back(), src_idx.back());
    for (std::size_t k = 0; k < src_->rank(); ++k) {
      int dk = src_->twist(k) + m;
      for (int e = dk; e >= 0; --e) {
        std::size_t col = src_idx[k] + static_cast<std::size_t>(dk - e);
        for (std::size_t t = 0; t < tgt_->rank(); ++t) {
          int dt = tgt_->twist(t) + m;
          for (const auto& [f, c] : cols_[k][t].terms()) {
            int e_out = e + f;
            std::size_t row = tgt_idx[t] + static_cast<std::size_t>(dt - e_out);
            a.at(row, col) += rational_entry(c);
          }
        }
      }
    }
    return a;
  }

  static std::vector<std::size_t> basis_offsets(const TwistedFreeModule& mod, int m) {
    std::vector<std::size_t> off{0};
    for (std::size_t k = 0; k < mod.rank(); ++k)
      off.push_back(off.back() + static_cast<std::size_t>(std::max(0, mod.twist(k) + m + 1)));
    return off;
  }

 private:
  static Rational rational_entry(const ArtinElement& c) {
    if (c.has_nilpotent() || !c.constant().is_constant())
      throw PreconditionError("global-sections matrix needs rational entries, got " + c.to_string());
    return c.constant().constant_value();
  }

  ModulePtr src_, tgt_;
  std::vector<ModuleSection> cols_;
};

/// f after g.
inline ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
  if (!(*g.target() == *f.source())) throw StructuralError("compose: target of g is not the source of f");
  ModuleMap r(g.source(), f.target());
  for (std::size_t k = 0; k < g.source()->rank(); ++k) r.set_column(k, f.apply(g.column(k)));
  return r;
}

inline ModuleMap identity_map(const ModulePtr& mod) {
  ModuleMap r(mod, mod);
  for (std::size_t k = 0; k < mod->rank(); ++k) {
    ModuleSection col(mod, -mod->twist(k));
    col.add(k, SForm::monomial(0, 0, ArtinElement(1)));
    r.set_column(k, col);
  }
  return r;
}

/// Sorted multiset of twists a_1 <= ... <= a_r.
class SplittingType {
 public:
  SplittingType() = default;
  explicit SplittingType(std::vector<int> a) : a_(std::move(a)) { std::sort(a_.begin(), a_.end()); }

  const std::vector<int>& twists() const noexcept { return a_; }
  std::size_t rank() const noexcept { return a_.size(); }
  std::size_t count(int t) const { return static_cast<std::size_t>(std::count(a_.begin(), a_.end(), t)); }

  /// h^0 of the bundle twisted by O(m).
  long h0(int m) const {
    long s = 0;
    for (int a : a_) s += std::max(0, a + m + 1);
    return s;
  }

  /// "{0^4, 1}"
  std::string to_string() const {
    std::string out = "{";
    for (std::size_t k = 0; k < a_.size();) {
      std::size_t e = k;
      while (e < a_.size() && a_[e] == a_[k]) ++e;
      if (k) out += ", ";
      out += std::to_string(a_[k]);
      if (e - k > 1) out += "^" + std::to_string(e - k);
      k = e;
    }
    return out + "}";
  }

  friend bool operator==(const SplittingType&, const SplittingType&) = default;

 private:
  std::vector<int> a_;
};

struct SplittingStats {
  std::size_t negativity = 0;
  std::size_t nullity = 0;
  std::size_t positivity = 0;
  bool globally_generated = true;
  bool ample = false;
  friend bool operator==(const SplittingStats&, const SplittingStats&) = default;
};

inline SplittingStats splitting_stats(const SplittingType& t) {
  SplittingStats s;
  for (int a : t.twists()) {
    if (a < 0) ++s.negativity;
    else if (a == 0) ++s.nullity;
    else ++s.positivity;
  }
  s.globally_generated = s.negativity == 0;
  s.ample = s.negativity + s.nullity == 0 && s.positivity > 0;
  return s;
}

/// Recovers the splitting type of a rank-r bundle from h^0(m) on a window of
/// consecutive twists, via #{a_i = -m} = h0(m) - 2 h0(m-1) + h0(m-2).
inline SplittingType splitting_from_h0(const std::map<int, long>& h0, std::size_t rank) {
  if (h0.empty()) throw PreconditionError("empty h0 window");
  const int lo = h0.begin()->first;
  const int hi = h0.rbegin()->first;
  if (static_cast<std::size_t>(hi - lo + 1) != h0.size()) throw PreconditionError("h0 window is not contiguous");
  std::map<int, long> v = h0;
  int start = lo + 2;
  if (v.at(lo) == 0) {
    v[lo - 1] = 0;
    start = lo + 1;
  }
  std::vector<int> a;
  for (int m = start; m <= hi; ++m) {
    long n = v.at(m) - 2 * v.at(m - 1) + v.at(m - 2);
    if (n < 0) throw PreconditionError("h0 data is not realizable (negative second difference at m = " + std::to_string(m) + ")");
    for (long k = 0; k < n; ++k) a.push_back(-m);
  }
  if (a.size() != rank)
    throw PreconditionError("h0 window too narrow: recovered " + std::to_string(a.size()) + " of " +
                            std::to_string(rank) + " summands");
  SplittingType t(std::move(a));
  for (const auto& [m, h] : h0)
    if (t.h0(m) != h) throw PreconditionError("h0 data is not realizable at m = " + std::to_string(m));
  return t;
}

}  // namespace twistkit
