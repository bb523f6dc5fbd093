#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/error.hpp"
#include "twistkit/index_set.hpp"
#include "twistkit/param_poly.hpp"
#include "twistkit/qmatrix.hpp"

namespace twistkit {

/// Basis symbol of the maximal ideal. Full symbols are u^l_(i,j) and v^l;
/// w_(i,j) only exists in the quotient by the fiber ideal at s = [1:0].
/// Ordering: u lex by (i,j,l), then w lex by (i,j), then v by l.
struct NilSymbol {
  enum class Kind : std::uint8_t { U = 0, W = 1, V = 2 };

  Kind kind = Kind::U;
  std::int8_t i = 0;
  std::int8_t j = 0;
  std::int8_t l = 0;

  static NilSymbol u(int i, int j, int l) { return {Kind::U, narrow(i), narrow(j), narrow(l)}; }
  static NilSymbol v(int l) { return {Kind::V, 0, 0, narrow(l)}; }
  static NilSymbol w(int i, int j) { return {Kind::W, narrow(i), narrow(j), 0}; }

  bool is_full() const noexcept { return kind != Kind::W; }

  std::string name() const {
    switch (kind) {
      case Kind::U:
        return "u" + std::to_string(l) + "_(" + std::to_string(i) + "," + std::to_string(j) + ")";
      case Kind::W:
        return "w_(" + std::to_string(i) + "," + std::to_string(j) + ")";
      case Kind::V:
        return "v" + std::to_string(l);
    }
    return "?";
  }

  friend auto operator<=>(const NilSymbol&, const NilSymbol&) = default;
  friend bool operator==(const NilSymbol&, const NilSymbol&) = default;

 private:
  static std::int8_t narrow(int x) {
    if (x < -128 || x > 127) throw StructuralError("symbol index out of range");
    return static_cast<std::int8_t>(x);
  }
};

/// u^l_(i,j), or nothing when (i,j) is outside I_d (such symbols are zero).
inline std::optional<NilSymbol> u_or_zero(const IndexSet& ix, int i, int j, int l) {
  if (!ix.in_I(i, j)) return std::nullopt;
  return NilSymbol::u(i, j, l);
}

/// The full basis of E in canonical order.
inline std::vector<NilSymbol> full_symbols(const IndexSet& ix) {
  std::vector<NilSymbol> out;
  for (const auto& [i, j] : ix.I())
    for (int l = 0; l < 4; ++l) out.push_back(NilSymbol::u(i, j, l));
  for (int l = 0; l < 4; ++l) out.push_back(NilSymbol::v(l));
  return out;
}

enum class ContextKind { DPrime, D, Ds, Custom };

/// Identifies the ring an ArtinElement lives in. Points s are stored
/// normalized (first nonzero coordinate 1).
struct ContextTag {
  int d = 0;
  ContextKind kind = ContextKind::DPrime;
  Rational s0 = 0;
  Rational s1 = 0;
  std::string custom;

  std::string label() const {
    switch (kind) {
      case ContextKind::DPrime:
        return "D'";
      case ContextKind::D:
        return "D";
      case ContextKind::Ds:
        return "D_s([" + s0.get_str() + ":" + s1.get_str() + "])";
      case ContextKind::Custom:
        return custom;
    }
    return "?";
  }
  friend bool operator==(const ContextTag& a, const ContextTag& b) {
    return a.d == b.d && a.kind == b.kind && a.s0 == b.s0 && a.s1 == b.s1 && a.custom == b.custom;
  }
};

using ContextPtr = std::shared_ptr<const ContextTag>;

/// Element of the square-zero extension K[E]/m^2 (or of one of its quotients)
/// with coefficients in the parameter ring: constant + sum of symbol * coeff.
/// An element without a context is a plain scalar and combines with anything.
class ArtinElement {
 public:
  using Nilpotent = std::map<NilSymbol, ParamPoly>;

  ArtinElement() = default;
  ArtinElement(ParamPoly c) : constant_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  ArtinElement(const Rational& c) : constant_(c) {}       // NOLINT(google-explicit-constructor)
  ArtinElement(long c) : constant_(c) {}                  // NOLINT(google-explicit-constructor)
  ArtinElement(int c) : constant_(c) {}                   // NOLINT(google-explicit-constructor)
  ArtinElement(ContextPtr ctx, ParamPoly c) : ctx_(std::move(ctx)), constant_(std::move(c)) {}

  static ArtinElement symbol(ContextPtr ctx, const NilSymbol& s, ParamPoly coeff = ParamPoly(1)) {
    if (!ctx) throw StructuralError("nilpotent symbol needs a quotient context");
    ArtinElement a;
    a.ctx_ = std::move(ctx);
    if (!coeff.is_zero()) a.nil_.emplace(s, std::move(coeff));
    return a;
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  const ParamPoly& constant() const noexcept { return constant_; }
  const Nilpotent& nilpotent() const noexcept { return nil_; }
  bool is_zero() const noexcept { return constant_.is_zero() && nil_.empty(); }
  bool is_nilpotent() const noexcept { return constant_.is_zero(); }
  bool has_nilpotent() const noexcept { return !nil_.empty(); }

  ParamPoly coefficient(const NilSymbol& s) const {
    auto it = nil_.find(s);
    return it == nil_.end() ? ParamPoly() : it->second;
  }

  ArtinElement constant_part() const { return ArtinElement(ctx_, constant_); }
  ArtinElement nilpotent_part() const {
    ArtinElement a = *this;
    a.constant_ = ParamPoly();
    return a;
  }

  ArtinElement& operator+=(const ArtinElement& o) {
    adopt(o);
    constant_ += o.constant_;
    for (const auto& [s, c] : o.nil_) add_nil(s, c);
    return *this;
  }
  ArtinElement& operator-=(const ArtinElement& o) { return *this += -o; }
  friend ArtinElement operator+(ArtinElement a, const ArtinElement& b) { return a += b; }
  friend ArtinElement operator-(ArtinElement a, const ArtinElement& b) { return a -= b; }
  friend ArtinElement operator-(ArtinElement a) {
    a.constant_ = -a.constant_;
    for (auto& [s, c] : a.nil_) c = -c;
    return a;
  }

  /// (c1 + n1)(c2 + n2) = c1 c2 + c1 n2 + c2 n1, since n1 n2 lies in m^2 = 0.
  friend ArtinElement operator*(const ArtinElement& a, const ArtinElement& b) {
    ArtinElement r;
    r.ctx_ = merged(a, b);
    r.constant_ = a.constant_ * b.constant_;
    if (!a.constant_.is_zero())
      for (const auto& [s, c] : b.nil_) r.add_nil(s, a.constant_ * c);
    if (!b.constant_.is_zero())
      for (const auto& [s, c] : a.nil_) r.add_nil(s, b.constant_ * c);
    return r;
  }
  ArtinElement& operator*=(const ArtinElement& o) { return *this = *this * o; }
  friend ArtinElement operator*(ArtinElement a, long k) {
    a.scale(Rational(k));
    return a;
  }
  friend ArtinElement operator*(ArtinElement a, const Rational& k) {
    a.scale(k);
    return a;
  }

  friend bool operator==(const ArtinElement& a, const ArtinElement& b) {
    merged(a, b);
    return a.constant_ == b.constant_ && a.nil_ == b.nil_;
  }

  /// Applies f to every coefficient (constant and nilpotent).
  template <class F>
  ArtinElement map_coefficients(F&& f) const {
    ArtinElement r;
    r.ctx_ = ctx_;
    r.constant_ = f(constant_);
    for (const auto& [s, c] : nil_) r.add_nil(s, f(c));
    return r;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const ParamPoly& c, const std::string& sym) {
      std::string cs = c.to_string();
      bool neg = !cs.empty() && cs[0] == '-' && c.term_count() == 1;
      if (!first) os << (neg ? " - " : " + ");
      else if (neg) os << "-";
      first = false;
      if (neg) cs = cs.substr(1);
      bool paren = c.term_count() > 1;
      if (sym.empty()) {
        os << (paren ? "(" + cs + ")" : cs);
      } else if (cs == "1") {
        os << sym;
      } else {
        os << (paren ? "(" + cs + ")" : cs) << "*" << sym;
      }
    };
    if (!constant_.is_zero()) emit(constant_, "");
    for (const auto& [s, c] : nil_) emit(c, s.name());
    return first ? "0" : os.str();
  }

  /// Used by QuotientContext::reduce; skips context checks.
  void rebind(ContextPtr ctx) { ctx_ = std::move(ctx); }
  void add_nil(const NilSymbol& s, const ParamPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = nil_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) nil_.erase(it);
    }
  }

 private:
  static ContextPtr merged(const ArtinElement& a, const ArtinElement& b) {
    if (!a.ctx_) return b.ctx_;
    if (!b.ctx_ || a.ctx_ == b.ctx_ || *a.ctx_ == *b.ctx_) return a.ctx_;
    throw StructuralError("Artin elements from different rings: " + a.ctx_->label() + " (d=" +
                          std::to_string(a.ctx_->d) + ") vs " + b.ctx_->label() + " (d=" +
                          std::to_string(b.ctx_->d) + ")");
  }
  void adopt(const ArtinElement& o) { ctx_ = merged(*this, o); }
  void scale(const Rational& k) {
    if (k == 0) {
      constant_ = ParamPoly();
      nil_.clear();
      return;
    }
    constant_ *= k;
    for (auto& [s, c] : nil_) c *= k;
  }

  ContextPtr ctx_;
  ParamPoly constant_;
  Nilpotent nil_;
};

inline ArtinElement artin_mul(const ArtinElement& a, const ArtinElement& b) { return a * b; }

/// A linear form in the symbols, used for ideal generators and substitutions.
using LinearForm = std::map<NilSymbol, Rational>;

inline std::string to_string(const LinearForm& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : f) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational mag = abs(c);
    if (mag != 1) os << mag.get_str() << "*";
    os << s.name();
  }
  return os.str();
}

inline void add_to(LinearForm& f, const NilSymbol& s, const Rational& c) {
  if (c == 0) return;
  auto [it, ins] = f.try_emplace(s, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) f.erase(it);
  }
}

/// Generator of I(D) attached to (i,j), 0 <= i,j <= d:
///   u^0_(i-1,j-1) + u^1_(i-1,j) + u^2_(i,j-1) + u^3_(i,j), symbols outside I_d read as 0.
inline LinearForm d_relation(const IndexSet& ix, int i, int j) {
  LinearForm f;
  const std::pair<Index, int> parts[] = {{{i - 1, j - 1}, 0}, {{i - 1, j}, 1}, {{i, j - 1}, 2}, {{i, j}, 3}};
  for (const auto& [p, l] : parts)
    if (auto s = u_or_zero(ix, p.i, p.j, l)) add_to(f, *s, 1);
  return f;
}

/// All (d+1)^2 generators of I(D), row-major in (i,j); four of them are 0.
inline std::vector<LinearForm> d_relations(const IndexSet& ix) {
  std::vector<LinearForm> out;
  for (int i = 0; i <= ix.d(); ++i)
    for (int j = 0; j <= ix.d(); ++j) out.push_back(d_relation(ix, i, j));
  return out;
}

/// Generators of I(D_s) beyond I(D): s0 u^0 + s1 u^2, s0 u^1 + s1 u^3 for each
/// (i,j) in I_d, then s0 v^0 + s1 v^2, s0 v^1 + s1 v^3.
inline std::vector<LinearForm> ds_relations(const IndexSet& ix, const Rational& s0, const Rational& s1) {
  std::vector<LinearForm> out;
  auto pair = [&](NilSymbol a, NilSymbol b) {
    LinearForm f;
    add_to(f, a, s0);
    add_to(f, b, s1);
    out.push_back(std::move(f));
  };
  for (const auto& [i, j] : ix.I()) {
    pair(NilSymbol::u(i, j, 0), NilSymbol::u(i, j, 2));
    pair(NilSymbol::u(i, j, 1), NilSymbol::u(i, j, 3));
  }
  pair(NilSymbol::v(0), NilSymbol::v(2));
  pair(NilSymbol::v(1), NilSymbol::v(3));
  return out;
}

/// Quotient of D' by a linear ideal, realized as a substitution table from
/// full symbols to linear combinations of a reduced basis.
class QuotientContext {
 public:
  /// No relations: every full symbol is its own reduction.
  static QuotientContext d_prime(int d) {
    IndexSet ix(d);
    QuotientContext q(std::make_shared<const ContextTag>(ContextTag{d, ContextKind::DPrime, 0, 0, {}}), ix);
    for (const auto& s : full_symbols(ix)) {
      q.table_[s] = LinearForm{{s, 1}};
      q.basis_.push_back(s);
    }
    return q;
  }

  static QuotientContext artin_D(int d) {
    IndexSet ix(d);
    return from_relations(ContextTag{d, ContextKind::D, 0, 0, {}}, d_relations(ix));
  }

  /// D_s for s = [s0:s1]. At s = [1:0] the reduced basis is the named one
  /// (w_(i,j) for (i,j) in J_d, then v2, v3); elsewhere it is the set of
  /// non-pivot full symbols of the relation matrix.
  static QuotientContext fiber(int d, Rational s0, Rational s1) {
    if (s0 == 0 && s1 == 0) throw PreconditionError("[0:0] is not a point of P^1");
    if (s0 != 0) {
      s1 /= s0;
      s0 = 1;
    } else {
      s1 = 1;
    }
    ContextTag tag{d, ContextKind::Ds, s0, s1, {}};
    if (s1 == 0) return named_fiber_at_1_0(tag);
    IndexSet ix(d);
    auto rels = d_relations(ix);
    auto extra = ds_relations(ix, s0, s1);
    rels.insert(rels.end(), extra.begin(), extra.end());
    return from_relations(tag, rels);
  }

  /// Generic construction: row-reduce the relations with pivots preferred on
  /// u^3, u^2, u^1, u^0 (each lex in (i,j)), then v^3 .. v^0.
  static QuotientContext from_relations(ContextTag tag_value, std::vector<LinearForm> relations) {
    IndexSet ix(tag_value.d);
    QuotientContext q(std::make_shared<const ContextTag>(std::move(tag_value)), ix);
    q.relations_ = relations;
    std::vector<NilSymbol> cols;
    for (int l = 3; l >= 0; --l)
      for (const auto& [i, j] : ix.I()) cols.push_back(NilSymbol::u(i, j, l));
    for (int l = 3; l >= 0; --l) cols.push_back(NilSymbol::v(l));
    std::map<NilSymbol, std::size_t> col_of;
    for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = c;

    QMatrix m(relations.size(), cols.size());
    for (std::size_t r = 0; r < relations.size(); ++r)
      for (const auto& [s, c] : relations[r]) {
        auto it = col_of.find(s);
        if (it == col_of.end()) throw StructuralError("relation uses a non-full symbol " + s.name());
        m.at(r, it->second) = c;
      }
    Rref red = rref(std::move(m));
    std::vector<bool> is_pivot(cols.size(), false);
    for (auto c : red.pivot_cols) is_pivot[c] = true;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!is_pivot[c]) q.table_[cols[c]] = LinearForm{{cols[c], 1}};
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
      LinearForm img;
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (!is_pivot[c] && red.reduced.at(r, c) != 0) add_to(img, cols[c], -red.reduced.at(r, c));
      q.table_[cols[red.pivot_cols[r]]] = std::move(img);
    }
    for (const auto& s : full_symbols(ix))
      if (q.table_.at(s) == LinearForm{{s, 1}}) q.basis_.push_back(s);
    q.relation_rank_ = red.rank();
    return q;
  }

  const ContextPtr& tag() const noexcept { return tag_; }
  int d() const noexcept { return tag_->d; }
  std::string label() const { return tag_->label(); }
  const std::vector<NilSymbol>& basis() const noexcept { return basis_; }
  const std::vector<LinearForm>& relations() const noexcept { return relations_; }
  std::size_t relation_rank() const noexcept { return relation_rank_; }

  /// Image of a full symbol (empty form = 0).
  const LinearForm& image(const NilSymbol& s) const {
    auto it = table_.find(s);
    if (it == table_.end()) throw StructuralError("symbol " + s.name() + " is not a full symbol for d = " + std::to_string(d()));
    return it->second;
  }
  const std::map<NilSymbol, LinearForm>& table() const noexcept { return table_; }

  LinearForm reduce(const LinearForm& f) const {
    LinearForm out;
    for (const auto& [s, c] : f)
      for (const auto& [t, k] : image(s)) add_to(out, t, c * k);
    return out;
  }

  /// Rewrites a in the reduced basis. Accepted sources: scalars, elements of
  /// D' with the same d, elements already in this context, and elements of D
  /// when this context contains I(D) (D_s or custom contexts built over D).
  ArtinElement reduce(const ArtinElement& a) const {
    const auto& src = a.context();
    if (src && (src == tag_ || *src == *tag_)) return a;
    if (src) {
      if (src->d != d()) throw StructuralError("cannot reduce a d=" + std::to_string(src->d) + " element in a d=" + std::to_string(d()) + " context");
      bool ok = src->kind == ContextKind::DPrime || (src->kind == ContextKind::D && tag_->kind == ContextKind::Ds);
      if (!ok) throw StructuralError("cannot reduce from " + src->label() + " to " + label());
    }
    ArtinElement out(tag_, a.constant());
    for (const auto& [s, c] : a.nilpotent())
      for (const auto& [t, k] : image(s)) out.add_nil(t, c * k);
    return out;
  }

  /// Every relation generator reduces to zero, and reducing twice equals
  /// reducing once on full-symbol bases.
  bool relations_vanish() const {
    for (const auto& r : relations_)
      if (!reduce(r).empty()) return false;
    return true;
  }

 private:
  QuotientContext(ContextPtr tag, const IndexSet&) : tag_(std::move(tag)) {}

  static QuotientContext named_fiber_at_1_0(ContextTag tag_value) {
    const int d = tag_value.d;
    IndexSet ix(d);
    QuotientContext q(std::make_shared<const ContextTag>(std::move(tag_value)), ix);
    for (const auto& [i, j] : ix.I()) {
      q.table_[NilSymbol::u(i, j, 0)] = {};
      q.table_[NilSymbol::u(i, j, 1)] = {};
      q.table_[NilSymbol::u(i, j, 2)] = j <= d - 2 ? LinearForm{{NilSymbol::w(i, j + 1), -1}} : LinearForm{};
      q.table_[NilSymbol::u(i, j, 3)] = ix.in_J(i, j) ? LinearForm{{NilSymbol::w(i, j), 1}} : LinearForm{};
    }
    q.table_[NilSymbol::v(0)] = {};
    q.table_[NilSymbol::v(1)] = {};
    q.table_[NilSymbol::v(2)] = {{NilSymbol::v(2), 1}};
    q.table_[NilSymbol::v(3)] = {{NilSymbol::v(3), 1}};
    for (const auto& [i, j] : ix.J()) q.basis_.push_back(NilSymbol::w(i, j));
    q.basis_.push_back(NilSymbol::v(2));
    q.basis_.push_back(NilSymbol::v(3));

    q.relations_ = d_relations(ix);
    auto extra = ds_relations(ix, 1, 0);
    q.relations_.insert(q.relations_.end(), extra.begin(), extra.end());
    q.validate_named_table(ix);
    return q;
  }

  // The table is a valid presentation of m O_{D_s} iff every relation maps to
  // zero, the map onto the named basis is surjective, and the relations span
  // a space of dimension dim E - |basis| (so the kernel is exactly their span).
  void validate_named_table(const IndexSet& ix) {
    for (std::size_t r = 0; r < relations_.size(); ++r)
      if (!reduce(relations_[r]).empty())
        throw InvariantViolation("fiber table at [1:0]: relation " + std::to_string(r) + " (" +
                                 twistkit::to_string(relations_[r]) + ") does not reduce to 0");
    auto full = full_symbols(ix);
    std::map<NilSymbol, std::size_t> col_of;
    for (std::size_t c = 0; c < full.size(); ++c) col_of[full[c]] = c;
    QMatrix rel(relations_.size(), full.size());
    for (std::size_t r = 0; r < relations_.size(); ++r)
      for (const auto& [s, c] : relations_[r]) rel.at(r, col_of.at(s)) = c;
    relation_rank_ = rank(rel);
    std::map<NilSymbol, std::size_t> basis_col;
    for (std::size_t c = 0; c < basis_.size(); ++c) basis_col[basis_[c]] = c;
    QMatrix img(full.size(), basis_.size());
    for (std::size_t r = 0; r < full.size(); ++r)
      for (const auto& [t, k] : table_.at(full[r])) img.at(r, basis_col.at(t)) = k;
    if (rank(img) != basis_.size())
      throw InvariantViolation("fiber table at [1:0] is not onto its basis");
    if (full.size() - relation_rank_ != basis_.size())
      throw InvariantViolation("fiber table at [1:0]: dim E - rank(relations) = " +
                               std::to_string(full.size() - relation_rank_) + " but basis has " +
                               std::to_string(basis_.size()) + " symbols");
  }

  ContextPtr tag_;
  std::map<NilSymbol, LinearForm> table_;
  std::vector<NilSymbol> basis_;
  std::vector<LinearForm> relations_;
  std::size_t relation_rank_ = 0;
};

inline ArtinElement reduce_in_context(const ArtinElement& a, const QuotientContext& ctx) { return ctx.reduce(a); }

/// The linear form as an element of D' (or of any context whose basis
/// contains its symbols).
inline ArtinElement to_element(const LinearForm& f, const ContextPtr& ctx) {
  ArtinElement a(ctx, ParamPoly());
  for (const auto& [s, c] : f) a.add_nil(s, ParamPoly(c));
  return a;
}

}  // namespace twistkit
