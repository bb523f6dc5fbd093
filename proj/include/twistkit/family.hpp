#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistkit/artin.hpp"
#include "twistkit/bigraded.hpp"
#include "twistkit/param_poly.hpp"
#include "twistkit/poly.hpp"

namespace twistkit {

/// Figure 2: gamma_(i,j) for (i,j) in I_d and gamma_z, all of degree d-2 in X.
struct GammaTable {
  int d = 0;
  std::map<Index, Poly> gamma;
  std::optional<Poly> gamma_z;

  const Poly& at(int i, int j) const { return gamma.at(Index{i, j}); }
  const Poly& z() const { return *gamma_z; }
};

/// Everything that only depends on d: layout, alphabet, gammas, G and its
/// partial derivatives.
class Family {
 public:
  explicit Family(int d)
      : layout_(std::make_shared<const VarLayout>(d)), alpha_(ParamAlphabet::for_degree(d)) {
    build_gamma();
    build_G();
  }

  int d() const noexcept { return layout_->d(); }
  const IndexSet& index_set() const noexcept { return layout_->index_set(); }
  const LayoutPtr& layout() const noexcept { return layout_; }
  const AlphabetPtr& alphabet() const noexcept { return alpha_; }
  const GammaTable& gamma() const noexcept { return gamma_; }
  const Poly& G() const noexcept { return *G_; }

  /// C_name as a polynomial; names outside the alphabet read as 0 (the
  /// convention for C_(i,j) at indices that carry no constant).
  ParamPoly C(const std::string& name) const {
    if (auto v = alpha_->find(name)) return ParamPoly::variable(alpha_, *v);
    return ParamPoly();
  }
  ParamPoly C(int i, int j) const { return C(ParamAlphabet::pair_name(i, j)); }

  Poly x_mono(int a, int b, int c, int e, const ParamPoly& coeff = ParamPoly(1)) const {
    return Poly::monomial(layout_, x_monomial(a, b, c, e), coeff);
  }
  Poly zero() const { return Poly(layout_); }
  Poly var(std::size_t v) const { return Poly::variable(layout_, v); }

  /// X-monomial multiplying Y_(i,j) in G: X0^k X1^(i-k) X2^(j-k) X3^(d-1-i-j+k).
  Poly y_coefficient(int i, int j) const {
    int k = IndexSet::k(i, j);
    return x_mono(k, i - k, j - k, d() - 1 - i - j + k);
  }

  Poly dG(std::size_t v) const { return G_->derivative(v); }

 private:
  void build_gamma() {
    const int d = this->d();
    gamma_.d = d;
    for (const auto& [i, j] : index_set().I()) gamma_.gamma.emplace(Index{i, j}, zero());
    for (const auto& [i, j] : index_set().I()) {
      if (i <= d - 2 && j <= d - 2) {
        int k = IndexSet::k(i, j);
        gamma_.gamma.at({i, j}) = x_mono(k, i - k, j - k, d - 2 - i - j + k, C(i, j));
      }
    }
    for (int j = 2; j <= d - 1; ++j)
      gamma_.gamma.at({d - 1, j}) = x_mono(0, j - 1, 0, d - 1 - j, C("C_" + std::to_string(j)));
    gamma_.gamma.at({d - 1, 1}) = x_mono(0, 1, 0, d - 3, C("C_1a")) + x_mono(0, 0, 1, d - 3, C("C_1b"));
    gamma_.gamma_z = x_mono(1, 0, 0, d - 3, C("C_za")) + x_mono(0, 1, 0, d - 3, C("C_zb"));
    for (const auto& [ix, p] : gamma_.gamma)
      if (!p.is_zero() && p.homogeneous_degree() != d - 2)
        throw InvariantViolation("gamma" + to_string(ix) + " is not of degree d-2");
  }

  void build_G() {
    const int d = this->d();
    Poly g = (x_mono(1, 0, 0, 1) - x_mono(0, 1, 1, 0)) * x_mono(0, 0, 0, d - 2);
    Poly z = var(layout_->z());
    for (const auto& [i, j] : index_set().I()) {
      Poly y = var(layout_->y(i, j));
      g += y_coefficient(i, j) * y;
      g += y * z * gamma_.at(i, j);
    }
    g += z * z * gamma_.z();
    if (g.homogeneous_degree() != d) throw InvariantViolation("G is not homogeneous of degree d");
    G_ = std::move(g);
  }

  LayoutPtr layout_;
  AlphabetPtr alpha_;
  GammaTable gamma_;
  std::optional<Poly> G_;
};

/// Segre image of X_l: X0 -> S0T0, X1 -> S0T1, X2 -> S1T0, X3 -> S1T1.
inline BiMono segre(int l) {
  switch (l) {
    case 0: return {1, 0, 1, 0};
    case 1: return {1, 0, 0, 1};
    case 2: return {0, 1, 1, 0};
    case 3: return {0, 1, 0, 1};
  }
  throw StructuralError("X index out of range");
}

inline BiMono segre(const Monomial& x_part) {
  BiMono m;
  for (const auto& [v, e] : x_part.factors())
    for (unsigned k = 0; k < e; ++k) m = m * segre(static_cast<int>(v));
  return m;
}

/// f^*p for p homogeneous of degree e: Y and Z become Artin-linear forms in X
/// (Y_(i,j) -> sum_l u^l_(i,j) X_l, Z -> sum_l v^l X_l), then the Segre
/// substitution, then reduction in ctx. Terms of degree >= 2 in Y, Z lie in
/// m^2 and are dropped.
inline BiSection f_pullback(const Poly& p, const QuotientContext& ctx, int degree = -1) {
  const VarLayout& L = *p.layout();
  if (L.d() != ctx.d()) throw StructuralError("pullback: polynomial and context have different d");
  int e = p.is_zero() ? degree : p.homogeneous_degree();
  if (e < 0) throw PreconditionError("pullback of the zero polynomial needs an explicit degree");
  if (degree >= 0 && degree != e) throw StructuralError("pullback: polynomial has degree " + std::to_string(e));
  BiSection out(e, e);
  for (const auto& [m, c] : p.terms()) {
    std::vector<unsigned> xe(4, 0);
    std::size_t nil_var = 0;
    unsigned nil_deg = 0;
    for (const auto& [v, k] : m.factors()) {
      if (L.is_x(v)) {
        xe[v] = k;
      } else {
        nil_var = v;
        nil_deg += k;
      }
    }
    BiMono base = segre(Monomial::from_dense(xe));
    if (nil_deg == 0) {
      out.add(base, ArtinElement(ctx.tag(), c));
      continue;
    }
    if (nil_deg > 1) continue;
    for (int l = 0; l < 4; ++l) {
      NilSymbol s = L.is_z(nil_var) ? NilSymbol::v(l) : NilSymbol::u(L.y_index(nil_var).i, L.y_index(nil_var).j, l);
      ArtinElement coef(ctx.tag(), ParamPoly());
      for (const auto& [t, k] : ctx.image(s)) coef.add_nil(t, c * k);
      out.add(base * segre(l), coef);
    }
  }
  return out;
}

/// Outcome of a single verification step.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
  std::vector<std::string> notes;
};

/// f^*G in ctx. Over D' the coefficient of S0^i S1^(d-i) T0^j T1^(d-j) is the
/// D-relation at (i,j); over D (or any context containing I(D)) it vanishes.
struct GVanishing {
  CheckResult result;
  BiSection pullback{0, 0};
  std::vector<std::string> residues;  // "(i,j): <coefficient>" for each nonzero monomial
};

inline GVanishing check_G_vanishes_in(const Family& fam, const QuotientContext& ctx) {
  const int d = fam.d();
  GVanishing g;
  g.result.name = "G vanishes on the family over " + ctx.label();
  Poly quad = (fam.x_mono(1, 0, 0, 1) - fam.x_mono(0, 1, 1, 0)) * fam.x_mono(0, 0, 0, d - 2);
  if (!f_pullback(quad, ctx).is_zero()) {
    g.result.details = "quadric part does not cancel";
    return g;
  }
  g.result.notes.push_back("quadric part cancels");
  g.pullback = f_pullback(fam.G(), ctx);
  // Ledger over D': each monomial carries exactly its relation generator.
  if (ctx.tag()->kind != ContextKind::DPrime) {
    QuotientContext dp = QuotientContext::d_prime(d);
    BiSection raw = f_pullback(fam.G(), dp);
    const IndexSet& ix = fam.index_set();
    bool ledger_ok = true;
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) {
        ArtinElement c = raw.coefficient(BiMono{i, d - i, j, d - j});
        if (!(c == to_element(d_relation(ix, i, j), dp.tag()))) ledger_ok = false;
      }
    if (raw.terms().size() > static_cast<std::size_t>((d + 1) * (d + 1))) ledger_ok = false;
    g.result.notes.push_back(ledger_ok ? "each monomial coefficient over D' is its D-relation generator"
                                       : "cancellation ledger mismatch over D'");
    if (!ledger_ok) {
      g.result.details = "coefficients over D' are not the D-relation generators";
      return g;
    }
  }
  for (const auto& [m, c] : g.pullback.terms())
    g.residues.push_back("(" + std::to_string(m.s0) + "," + std::to_string(m.t0) + "): " + c.to_string());
  g.result.pass = g.pullback.is_zero();
  g.result.details = g.result.pass ? "f*G = 0" : std::to_string(g.residues.size()) + " nonzero monomials";
  return g;
}

inline GVanishing check_G_vanishes(int d) {
  Family fam(d);
  return check_G_vanishes_in(fam, QuotientContext::artin_D(d));
}

/// Maximality of D_s: the b- and c-coefficients of phi(s0 a0 + s1 a2) and
/// phi(s0 a1 + s1 a3) generate I(D_s) modulo I(D).
struct DsMaximality {
  CheckResult result;
  std::vector<LinearForm> coefficients;  // extracted b_(i,j) and c coefficients
};

inline DsMaximality check_Ds_maximal(int d, const Rational& s0, const Rational& s1) {
  IndexSet ix(d);
  DsMaximality out;
  out.result.name = "D_s maximality at [" + s0.get_str() + ":" + s1.get_str() + "]";
  if (s0 == 0 && s1 == 0) throw PreconditionError("[0:0] is not a point of P^1");
  // phi(sum_l lambda_l a_l) = sum lambda_l a_l + sum_(i,j) (sum_l lambda_l u^l_(i,j)) b_(i,j) + (sum_l lambda_l v^l) c
  const Rational lambda[2][4] = {{s0, 0, s1, 0}, {0, s0, 0, s1}};
  for (const auto& lam : lambda) {
    for (const auto& [i, j] : ix.I()) {
      LinearForm f;
      for (int l = 0; l < 4; ++l) add_to(f, NilSymbol::u(i, j, l), lam[l]);
      out.coefficients.push_back(f);
    }
    LinearForm f;
    for (int l = 0; l < 4; ++l) add_to(f, NilSymbol::v(l), lam[l]);
    out.coefficients.push_back(f);
  }
  auto full = full_symbols(ix);
  std::map<NilSymbol, std::size_t> col;
  for (std::size_t k = 0; k < full.size(); ++k) col[full[k]] = k;
  auto rank_of = [&](const std::vector<LinearForm>& rows) {
    QMatrix m(rows.size(), full.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [s, c] : rows[r]) m.at(r, col.at(s)) = c;
    return rank(m);
  };
  auto base = d_relations(ix);
  auto with_coeffs = base;
  with_coeffs.insert(with_coeffs.end(), out.coefficients.begin(), out.coefficients.end());
  const std::size_t r_coeffs = rank_of(with_coeffs);
  std::vector<std::string> missing;
  for (const auto& g : ds_relations(ix, s0, s1)) {
    auto probe = with_coeffs;
    probe.push_back(g);
    if (rank_of(probe) != r_coeffs) missing.push_back(to_string(g));
  }
  auto with_ds = base;
  auto ds = ds_relations(ix, s0, s1);
  with_ds.insert(with_ds.end(), ds.begin(), ds.end());
  const std::size_t r_ds = rank_of(with_ds);
  std::vector<std::string> extra;
  for (const auto& g : out.coefficients) {
    auto probe = with_ds;
    probe.push_back(g);
    if (rank_of(probe) != r_ds) extra.push_back(to_string(g));
  }
  out.result.pass = missing.empty() && extra.empty();
  if (out.result.pass) {
    out.result.details = "ideal of b,c-coefficients equals I(D_s), rank " + std::to_string(r_ds);
  } else {
    std::string msg;
    for (const auto& m : missing) msg += (msg.empty() ? "missing generator " : ", ") + m;
    for (const auto& e : extra) msg += (msg.empty() ? "" : "; ") + std::string("not in I(D_s): ") + e;
    out.result.details = msg;
  }
  return out;
}

}  // namespace twistkit
