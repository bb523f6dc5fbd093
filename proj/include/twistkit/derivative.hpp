#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twistkit/linalg.hpp"
#include "twistkit/normal_bundle.hpp"

namespace twistkit {

/// Reduced basis of m O_{D_s} at s = [1:0]: w_(i,j) for (i,j) in J_d, then v2, v3.
inline QuotientContext ms_basis(int d) { return QuotientContext::fiber(d, 1, 0); }

/// Square matrix of d'q_s with the common factor 1/S0 taken out.
struct DerivMatrix {
  int d = 0;
  std::vector<NilSymbol> rows;          // MsBasis order
  std::vector<std::string> columns;     // g0, g1, f_(i,j) lex
  PolyMatrix entries;
  std::string normalization = "1/S0";

  std::size_t size() const noexcept { return rows.size(); }
  const ParamPoly& at(const NilSymbol& w, const std::string& col) const {
    auto r = std::find(rows.begin(), rows.end(), w);
    auto c = std::find(columns.begin(), columns.end(), col);
    if (r == rows.end() || c == columns.end()) throw StructuralError("no entry (" + w.name() + ", " + col + ")");
    return entries[static_cast<std::size_t>(r - rows.begin())][static_cast<std::size_t>(c - columns.begin())];
  }
};

/// Steps 2-5 at s = [1:0].
class DerivativePipeline {
 public:
  explicit DerivativePipeline(int d)
      : fam_(d), ctx_(ms_basis(d)), dg_(build_dG(fam_, ctx_)), surj_(check_dG_surjective(dg_)) {
    if (!surj_.inverse) throw InvariantViolation("dG0 is not invertible on twisted global sections: " + surj_.result.details);
    const ModuleSection& c_row = dg_.dGm.column("c");
    for (const auto& w : ctx_.basis()) {
      ModuleSection s2 = c_row.map_coefficients([&](const ArtinElement& a) { return ArtinElement(a.coefficient(w)); });
      step2_.emplace(w, s2);
      step3_.emplace(w, -invert_dG0(*surj_.inverse, s2));
    }
    build_matrix();
  }

  int d() const noexcept { return fam_.d(); }
  const Family& family() const noexcept { return fam_; }
  const QuotientContext& context() const noexcept { return ctx_; }
  const DGMap& dg() const noexcept { return dg_; }
  const SurjectivityCheck& surjectivity() const noexcept { return surj_; }
  const DG0Inverse& inverse() const { return *surj_.inverse; }

  /// Coefficient of w in dGm(c): a section of the slot module, twist -1.
  const ModuleSection& step2(const NilSymbol& w) const { return step2_.at(w); }
  /// -dG0^{-1} of step2(w): a section of the tangent module, twist -1.
  const ModuleSection& step3(const NilSymbol& w) const { return step3_.at(w); }
  const DerivMatrix& matrix() const noexcept { return matrix_; }

 private:
  // Step 4 sets S1 = 0 (drops S1*e terms); step 5 reads S0^2 e_k = g_k,
  // S0 b_(i,j) = f_(i,j), leaving one factor 1/S0 on every entry.
  void build_matrix() {
    const int d = fam_.d();
    matrix_.d = d;
    matrix_.rows = ctx_.basis();
    matrix_.columns = {"g0", "g1"};
    for (const auto& [i, j] : fam_.index_set().I())
      if (i <= d - 2) matrix_.columns.push_back(f_name(i, j));
    std::map<std::string, std::size_t> col;
    for (std::size_t k = 0; k < matrix_.columns.size(); ++k) col[matrix_.columns[k]] = k;
    auto scalar = [](const ArtinElement& a, const std::string& where) {
      if (a.has_nilpotent()) throw InvariantViolation("nilpotent entry at " + where);
      return a.constant();
    };
    for (const auto& w : matrix_.rows) {
      std::vector<ParamPoly> row(matrix_.columns.size());
      const ModuleSection& s = step3_.at(w);
      for (std::size_t k = 0; k < s.size(); ++k) {
        const std::string& name = dg_.tev->name(k);
        const SForm& f = s[k];
        if (f.is_zero()) continue;
        if (name == "c") throw InvariantViolation("row " + w.name() + " has a c-component");
        if (name == "e0" || name == "e1") {
          row[col.at(name == "e0" ? "g0" : "g1")] = scalar(f.coefficient(1), w.name());
          continue;
        }
        int i = std::stoi(name.substr(2)), j = std::stoi(name.substr(name.find(',') + 1));
        if (i > d - 2) throw InvariantViolation("row " + w.name() + " has a component on " + name);
        row[col.at(f_name(i, j))] = scalar(f.coefficient(0), w.name());
      }
      matrix_.entries.push_back(std::move(row));
    }
    if (matrix_.entries.size() != matrix_.columns.size())
      throw InvariantViolation("d'q_s is not square: " + std::to_string(matrix_.entries.size()) + " x " +
                               std::to_string(matrix_.columns.size()));
  }

  Family fam_;
  QuotientContext ctx_;
  DGMap dg_;
  SurjectivityCheck surj_;
  std::map<NilSymbol, ModuleSection> step2_;
  std::map<NilSymbol, ModuleSection> step3_;
  DerivMatrix matrix_;
};

struct Factor {
  ParamPoly poly;
  unsigned multiplicity = 1;
  bool irreducible = true;  // false: nonlinear, not split further
};

/// Nonvanishing of every factor is sufficient for surjectivity.
struct GenericityCertificate {
  bool issued = false;
  std::string reason;
  RankDet elimination;
  std::optional<ParamPoly> det;  // expanded only when small enough
  Rational unit = 1;             // det = unit * prod factor^multiplicity
  std::vector<Factor> factors;
  Assignment witness;
  Rational witness_value = 0;
  std::vector<std::string> vanishing;  // factors killed by the given assignment
  std::optional<SpecializationCheck> modular;

  std::string det_string() const {
    if (factors.empty() && !elimination.core_det) return "0";
    std::string out = unit.get_str();
    for (const auto& f : factors) {
      out += f.poly.term_count() == 1 ? "*" + f.poly.to_string() : "*(" + f.poly.to_string() + ")";
      if (f.multiplicity > 1) out += "^" + std::to_string(f.multiplicity);
    }
    return out;
  }
};

/// Term-count bound above which the determinant is kept factored.
inline constexpr double kExpandLimit = 1 << 21;

namespace detail {

// Splits p into unit * monomial content * primitive part and merges the
// pieces into fs. Existing factors are divided out first.
inline void absorb(ParamPoly p, Rational& unit, std::vector<Factor>& fs) {
  if (p.is_zero()) throw InvariantViolation("zero factor");
  Monomial mc = p.monomial_content();
  for (const auto& [v, e] : mc.factors()) {
    ParamPoly x = ParamPoly::variable(p.alphabet(), v);
    p = *p.divide_exact(ParamPoly::term(p.alphabet(), Monomial::variable(v, e), 1));
    auto it = std::find_if(fs.begin(), fs.end(), [&](const Factor& f) { return f.poly == x; });
    if (it == fs.end()) fs.push_back({x, e, true});
    else it->multiplicity += e;
  }
  for (auto& f : fs) {
    if (f.poly.total_degree() == 0) continue;
    while (p.total_degree() > 0) {
      auto q = p.divide_exact(f.poly);
      if (!q) break;
      p = *q;
      ++f.multiplicity;
    }
  }
  if (p.is_constant()) {
    unit *= p.constant_value();
    return;
  }
  Rational c = p.content();
  if (p.leading_term().second < 0) c = -c;
  unit *= c;
  p = p * (Rational(1) / c);
  fs.push_back({p, 1, p.total_degree() == 1});
}

inline Rational value(const std::vector<Factor>& fs, const Rational& unit, const Assignment& a) {
  Rational v = unit;
  for (const auto& f : fs) {
    Rational x = f.poly.evaluate(a);
    for (unsigned k = 0; k < f.multiplicity; ++k) v *= x;
  }
  return v;
}

}  // namespace detail

/// Exact determinant (factored), integer witness, modular cross-check.
/// A partial assignment is substituted into the factors first; factors that
/// vanish identically under it are reported and the certificate is refused.
inline GenericityCertificate certify_surjective(const DerivMatrix& M, std::uint64_t seed,
                                                const Assignment& partial = {}, std::size_t modular_trials = 20) {
  GenericityCertificate cert;
  if (M.entries.size() != M.columns.size()) throw PreconditionError("certify_surjective needs a square matrix");
  auto alpha = ParamAlphabet::for_degree(M.d);
  for (const auto& [name, v] : partial) (void)alpha->index(name);
  cert.elimination = ff_rank_det(M.entries, false);
  if (modular_trials) cert.modular = specialization_check(M.entries, cert.elimination, alpha->size(), modular_trials, seed);
  if (!cert.elimination.core_det) {
    cert.reason = "determinant is the zero polynomial (rank " + std::to_string(cert.elimination.rank) + " of " +
                  std::to_string(M.size()) + ")";
    return cert;
  }
  for (const auto& s : cert.elimination.singletons) detail::absorb(s, cert.unit, cert.factors);
  detail::absorb(*cert.elimination.core_det, cert.unit, cert.factors);

  double size = 1;
  for (const auto& f : cert.factors) size *= std::pow(static_cast<double>(f.poly.term_count()), f.multiplicity);
  if (size <= kExpandLimit) {
    // independent expanded elimination; must agree with the factor list
    RankDet full = ff_rank_det(M.entries, true);
    ParamPoly product(cert.unit);
    for (const auto& f : cert.factors)
      for (unsigned k = 0; k < f.multiplicity; ++k) product *= f.poly;
    if (!full.det || !(product == *full.det))
      throw InvariantViolation("factor list does not multiply back to the determinant");
    cert.det = std::move(full.det);
  }

  for (const auto& f : cert.factors)
    if (f.poly.substitute(partial).is_zero()) cert.vanishing.push_back(f.poly.to_string());
  if (!cert.vanishing.empty()) {
    cert.reason = "determinant vanishes under the given assignment";
    return cert;
  }

  std::vector<Assignment> candidates;
  Assignment ones, distinct;
  for (std::size_t v = 0; v < alpha->size(); ++v) {
    ones[alpha->name(v)] = 1;
    distinct[alpha->name(v)] = static_cast<long>(v) + 2;
  }
  candidates.push_back(ones);
  candidates.push_back(distinct);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-9, 9);
  for (int t = 0; t < 200; ++t) {
    Assignment r;
    for (std::size_t v = 0; v < alpha->size(); ++v) {
      int x = 0;
      while (x == 0) x = small(rng);
      r[alpha->name(v)] = x;
    }
    candidates.push_back(r);
  }
  for (auto a : candidates) {
    for (const auto& [k, v] : partial) a[k] = v;
    Rational val = detail::value(cert.factors, cert.unit, a);
    if (val != 0) {
      cert.witness = a;
      cert.witness_value = val;
      cert.issued = true;
      return cert;
    }
  }
  cert.reason = "no witness found";
  return cert;
}

/// Cone over X in P^{n'} (n' >= d^2): each extra coordinate adds one O(1)
/// summand to the evaluation tangent bundle.
struct ExtensionReport {
  int d = 0;
  int n = 0;
  int n_prime = 0;
  int extra_summands = 0;
  int rank_X = 0;
  int rank_X_prime = 0;
  int quotient_rank_X = 0;        // rank after dividing by the O(1) block
  int quotient_rank_X_prime = 0;
  bool transfers = false;
};

inline ExtensionReport extend_to_n(int d, int n_prime) {
  IndexSet ix(d);
  if (n_prime < d * d)
    throw PreconditionError("n' = " + std::to_string(n_prime) + " < d^2 = " + std::to_string(d * d) +
                            ": no very twisting family (n >= d^2 is necessary)");
  ExtensionReport r;
  r.d = d;
  r.n = d * d;
  r.n_prime = n_prime;
  r.extra_summands = n_prime - d * d;
  r.rank_X = r.n - d - 1;
  r.rank_X_prime = n_prime - d - 1;
  r.quotient_rank_X = r.rank_X - 1;
  r.quotient_rank_X_prime = r.rank_X_prime - (1 + r.extra_summands);
  r.transfers = r.rank_X_prime == r.rank_X + r.extra_summands && r.quotient_rank_X == r.quotient_rank_X_prime;
  return r;
}

}  // namespace twistkit
