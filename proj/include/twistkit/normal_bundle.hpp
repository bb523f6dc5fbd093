#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistkit/bigraded.hpp"
#include "twistkit/family.hpp"

namespace twistkit {

/// e0, e1 (twist 2), b_(i,j) for (i,j) in I_d (twist 1), c (twist 1).
inline ModulePtr tev_module(int d) {
  IndexSet ix(d);
  std::vector<TwistedFreeModule::Summand> s{{"e0", 2}, {"e1", 2}};
  for (const auto& p : ix.I()) s.push_back({"b" + to_string(p), 1});
  s.push_back({"c", 1});
  return std::make_shared<const TwistedFreeModule>(std::move(s));
}

inline std::string b_name(int i, int j) { return "b" + to_string(Index{i, j}); }
inline std::string f_name(int i, int j) { return "f" + to_string(Index{i, j}); }

/// Target of dG after the O_B(-1) normalization: d copies of O(d), one per
/// T-slot T0^j T1^(d-1-j).
inline ModulePtr slot_module(int d) {
  std::vector<TwistedFreeModule::Summand> s;
  for (int j = 0; j < d; ++j) s.push_back({binary_monomial("T0", j, "T1", d - 1 - j), d});
  return std::make_shared<const TwistedFreeModule>(std::move(s));
}

/// Twisted-down pushforward of a bidegree (a, d-1) section as a section of
/// the slot module with shift a - d.
inline ModuleSection to_slot_section(const ModulePtr& slots, const BiSection& f) {
  const int d = static_cast<int>(slots->rank());
  if (f.t_degree() != d - 1) throw StructuralError("section has T-degree " + std::to_string(f.t_degree()) + ", expected d-1");
  auto forms = pushforward_minus_section(f.shifted(BiMono{0, 0, 0, 1}));
  ModuleSection sec(slots, f.s_degree() - d);
  for (int j = 0; j < d; ++j) sec.add(static_cast<std::size_t>(j), forms[static_cast<std::size_t>(j)]);
  return sec;
}

inline BiSection from_slot_section(const ModuleSection& sec) {
  const int d = static_cast<int>(sec.size());
  std::vector<SForm> forms(sec.components());
  BiSection f = reconstruct_from_pushforward(forms, d + sec.shift());
  BiSection out(d + sec.shift(), d - 1);
  for (const auto& [m, c] : f.terms()) out.add(BiMono{m.s0, m.s1, m.t0, m.t1 - 1}, c);
  return out;
}

/// dG on the tangent module, split into constant and nilpotent parts.
struct DGMap {
  int d = 0;
  ContextPtr context;
  ModulePtr tev;
  ModulePtr target;
  ModuleMap full;
  ModuleMap dG0;
  ModuleMap dGm;
  std::array<std::optional<ModuleSection>, 4> a_rows;  // dG(phi(a_l)), shift -1
  /// e-rows from the second relation (e0 = -a2/S0, e1 = -a3/S0); equal to
  /// the ones stored in full by construction check.
  bool e_rows_consistent = false;
};

/// Builds dG over ctx (D, or D_s inside D). Over D' the e-rows are not
/// defined: dG(phi(a0)) is not divisible by S1 there.
inline DGMap build_dG(const Family& fam, const QuotientContext& ctx) {
  if (ctx.tag()->kind == ContextKind::DPrime)
    throw PreconditionError("dG needs a context inside D (the e-relations fail over D')");
  const int d = fam.d();
  const VarLayout& L = *fam.layout();
  DGMap g{d, ctx.tag(), tev_module(d), slot_module(d), ModuleMap(tev_module(d), slot_module(d)),
          ModuleMap(tev_module(d), slot_module(d)), ModuleMap(tev_module(d), slot_module(d)), {}, false};
  g.full = ModuleMap(g.tev, g.target);

  std::map<Index, BiSection> dy;
  for (const auto& [i, j] : fam.index_set().I()) {
    BiSection s = f_pullback(fam.dG(L.y(i, j)), ctx, d - 1);
    dy.emplace(Index{i, j}, s);
    g.full.set_column(b_name(i, j), to_slot_section(g.target, s));
  }
  BiSection dz = f_pullback(fam.dG(L.z()), ctx, d - 1);
  g.full.set_column("c", to_slot_section(g.target, dz));

  std::array<std::optional<BiSection>, 4> a;
  for (int l = 0; l < 4; ++l) {
    BiSection s = f_pullback(fam.dG(VarLayout::x(l)), ctx, d - 1);
    for (const auto& [i, j] : fam.index_set().I()) {
      ArtinElement u(ctx.tag(), ParamPoly());
      for (const auto& [t, k] : ctx.image(NilSymbol::u(i, j, l))) u.add_nil(t, ParamPoly(k));
      if (!u.is_zero()) s += dy.at({i, j}) * u;
    }
    ArtinElement v(ctx.tag(), ParamPoly());
    for (const auto& [t, k] : ctx.image(NilSymbol::v(l))) v.add_nil(t, ParamPoly(k));
    if (!v.is_zero()) s += dz * v;
    g.a_rows[static_cast<std::size_t>(l)] = to_slot_section(g.target, s);
    a[static_cast<std::size_t>(l)] = std::move(s);
  }
  // a0 = S1 e0, a2 = -S0 e0, a1 = S1 e1, a3 = -S0 e1.
  BiSection e0 = a[0]->divided_by_s(1);
  BiSection e1 = a[1]->divided_by_s(1);
  BiSection e0_alt = (*a[2] * ArtinElement(-1)).divided_by_s(0);
  BiSection e1_alt = (*a[3] * ArtinElement(-1)).divided_by_s(0);
  g.e_rows_consistent = e0 == e0_alt && e1 == e1_alt;
  if (!g.e_rows_consistent)
    throw InvariantViolation("e-rows disagree: a0/S1 = " + e0.to_string() + " but -a2/S0 = " + e0_alt.to_string());
  g.full.set_column("e0", to_slot_section(g.target, e0));
  g.full.set_column("e1", to_slot_section(g.target, e1));

  g.dG0 = g.full.constant_part();
  g.dGm = g.full.nilpotent_part();
  if (!g.full.degrees_consistent()) throw InvariantViolation("dG fails the entry-degree audit");
  return g;
}

/// The O_B(-1) twisted dG0 on global sections is a signed permutation; this
/// records, for each target monomial S0^i S1^(d-1-i) in slot j, its unique
/// preimage (summand, S0-exponent of the multiplier, sign).
struct DG0Inverse {
  struct Preimage {
    std::size_t summand = 0;
    int s0_exp = 0;
    int sign = 1;
  };
  int d = 0;
  ModulePtr tev;
  ModulePtr target;
  std::map<Index, Preimage> table;  // keyed by (i, j) = (S0 exponent, slot)
};

struct SurjectivityCheck {
  CheckResult result;
  QMatrix matrix;                       // d^2 x d^2, rows (i,j) lex, columns b lex then S0e0 S1e0 S0e1 S1e1
  std::vector<std::string> column_labels;
  std::optional<DG0Inverse> inverse;
};

inline SurjectivityCheck check_dG_surjective(const DGMap& g) {
  const int d = g.d;
  SurjectivityCheck out;
  out.result.name = "dG0 twisted global matrix is a signed permutation";
  struct Col {
    std::string label;
    std::size_t summand;
    int s0_exp;
  };
  std::vector<Col> cols;
  for (std::size_t k = 0; k < g.tev->rank(); ++k) {
    const auto& name = g.tev->name(k);
    if (name.rfind("b", 0) == 0) cols.push_back({name, k, 0});
  }
  for (const char* e : {"e0", "e1"})
    for (int s0 : {1, 0}) cols.push_back({std::string(s0 ? "S0" : "S1") + e, g.tev->index(e), s0});
  out.matrix = QMatrix(static_cast<std::size_t>(d * d), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out.column_labels.push_back(cols[c].label);
    const ModuleSection& col = g.dG0.column(cols[c].summand);
    int mult_deg = g.tev->twist(cols[c].summand) - 1;
    SForm mult = SForm::monomial(mult_deg, cols[c].s0_exp, ArtinElement(1));
    ModuleSection img = mult * col;
    for (int j = 0; j < d; ++j)
      for (const auto& [e, coef] : img[static_cast<std::size_t>(j)].terms()) {
        if (coef.has_nilpotent() || !coef.constant().is_constant())
          throw InvariantViolation("dG0 has a non-rational entry");
        out.matrix.at(static_cast<std::size_t>(e * d + j), c) += coef.constant().constant_value();
      }
  }
  std::vector<std::string> bad;
  DG0Inverse inv{d, g.tev, g.target, {}};
  std::vector<int> row_hits(static_cast<std::size_t>(d * d), 0);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    int hits = 0;
    for (std::size_t r = 0; r < out.matrix.rows(); ++r) {
      const Rational& v = out.matrix.at(r, c);
      if (v == 0) continue;
      ++hits;
      ++row_hits[r];
      if (v != 1 && v != -1) bad.push_back("entry " + v.get_str() + " in column " + cols[c].label);
      Index target{static_cast<int>(r) / d, static_cast<int>(r) % d};
      inv.table[target] = {cols[c].summand, cols[c].s0_exp, v > 0 ? 1 : -1};
    }
    if (hits != 1) bad.push_back("column " + cols[c].label + " has " + std::to_string(hits) + " nonzero entries");
  }
  for (std::size_t r = 0; r < row_hits.size(); ++r)
    if (row_hits[r] != 1)
      bad.push_back("row " + to_string(Index{static_cast<int>(r) / d, static_cast<int>(r) % d}) + " has " +
                    std::to_string(row_hits[r]) + " nonzero entries");
  // The four e-products must land exactly on the indices excluded from I_d.
  IndexSet ix(d);
  for (const auto& [t, p] : inv.table) {
    bool is_e = g.tev->name(p.summand)[0] == 'e';
    if (is_e == ix.in_I(t.i, t.j)) bad.push_back("index " + to_string(t) + " hit by " + g.tev->name(p.summand));
  }
  out.result.pass = bad.empty();
  out.result.details = std::to_string(d * d) + "x" + std::to_string(cols.size()) +
                       (bad.empty() ? " signed permutation" : ": " + bad.front());
  out.result.notes = bad;
  if (bad.empty()) out.inverse = std::move(inv);
  return out;
}

/// Unique preimage under dG0 for shift -1; for larger shifts the target is
/// split as S0*t0 + S1*t1 (t1 collecting the pure S1-powers) and each part is
/// inverted recursively.
inline ModuleSection invert_dG0(const DG0Inverse& inv, const ModuleSection& t) {
  if (!(*t.module() == *inv.target)) throw StructuralError("invert_dG0: not a section of the slot module");
  const int m = t.shift();
  ModuleSection out(inv.tev, m);
  if (t.is_zero()) return out;
  if (m < -1) throw PreconditionError("invert_dG0: no sections below twist -1");
  if (m == -1) {
    for (int j = 0; j < inv.d; ++j)
      for (const auto& [e, c] : t[static_cast<std::size_t>(j)].terms()) {
        const auto& p = inv.table.at(Index{e, j});
        int deg = inv.tev->twist(p.summand) - 1;
        out.add(p.summand, SForm::monomial(deg, p.s0_exp, p.sign > 0 ? c : -c));
      }
    return out;
  }
  ModuleSection t0(inv.target, m - 1), t1(inv.target, m - 1);
  for (int j = 0; j < inv.d; ++j) {
    const SForm& f = t[static_cast<std::size_t>(j)];
    SForm p0(f.degree() - 1), p1(f.degree() - 1);
    for (const auto& [e, c] : f.terms()) {
      if (e >= 1) p0.add(e - 1, c);
      else p1.add(0, c);
    }
    t0.add(static_cast<std::size_t>(j), p0);
    t1.add(static_cast<std::size_t>(j), p1);
  }
  const ArtinElement one(1);
  out += SForm::monomial(1, 1, one) * invert_dG0(inv, t0);
  out += SForm::monomial(1, 0, one) * invert_dG0(inv, t1);
  return out;
}

/// Source of the kernel inclusion: g0, g1, f_(i,j) for (i,j) in I_d with
/// i <= d-2 (all twist 0), then h (twist 1).
inline ModulePtr kernel_module(int d) {
  IndexSet ix(d);
  std::vector<TwistedFreeModule::Summand> s{{"g0", 0}, {"g1", 0}};
  for (const auto& [i, j] : ix.I())
    if (i <= d - 2) s.push_back({f_name(i, j), 0});
  s.push_back({"h", 1});
  return std::make_shared<const TwistedFreeModule>(std::move(s));
}

struct KernelBasis {
  ModulePtr source;
  ModuleMap iota0;    // printed leading parts
  ModuleMap iota_m;   // nilpotent corrections invert_dG0(-dGm(iota0))
  ModuleMap iota;     // iota0 + iota_m
  bool leading_in_kernel = false;
  bool composition_zero = false;
};

inline ModuleMap kernel_leading_part(int d, const ModulePtr& tev) {
  ModulePtr K = kernel_module(d);
  ModuleMap iota(K, tev);
  const ArtinElement one(1), minus(-1);
  auto s0 = SForm::monomial(1, 1, one), s1 = SForm::monomial(1, 0, one);
  for (std::size_t k = 0; k < K->rank(); ++k) {
    const std::string& n = K->name(k);
    ModuleSection col(tev, -K->twist(k));
    if (n == "g0") {
      col.add("e0", SForm::monomial(2, 2, one));
      col.add(b_name(2, 0), SForm::monomial(1, 0, minus));
    } else if (n == "g1") {
      col.add("e1", SForm::monomial(2, 2, one));
      col.add(b_name(2, 1), s1);
    } else if (n == "h") {
      col.add("c", SForm::monomial(0, 0, one));
    } else {
      int i = std::stoi(n.substr(2)), j = std::stoi(n.substr(n.find(',') + 1));
      col.add(b_name(i, j), s0);
      col.add(b_name(i + 1, j), SForm::monomial(1, 0, minus));
    }
    iota.set_column(k, col);
  }
  return iota;
}

inline KernelBasis kernel_basis(const DGMap& g, const DG0Inverse& inv) {
  KernelBasis kb{kernel_module(g.d), kernel_leading_part(g.d, g.tev), ModuleMap(kernel_module(g.d), g.tev),
                 ModuleMap(kernel_module(g.d), g.tev)};
  kb.source = kb.iota0.source();
  kb.iota_m = ModuleMap(kb.source, g.tev);
  kb.leading_in_kernel = compose(g.dG0, kb.iota0).is_zero();
  if (!kb.leading_in_kernel) throw InvariantViolation("dG0 does not kill the leading kernel basis");
  for (std::size_t k = 0; k < kb.source->rank(); ++k)
    kb.iota_m.set_column(k, invert_dG0(inv, -g.dGm.apply(kb.iota0.column(k))));
  kb.iota = ModuleMap(kb.source, g.tev);
  for (std::size_t k = 0; k < kb.source->rank(); ++k)
    kb.iota.set_column(k, kb.iota0.column(k) + kb.iota_m.column(k));
  kb.composition_zero = compose(g.full, kb.iota).is_zero();
  if (!kb.composition_zero) throw InvariantViolation("dG o iota is not zero");
  return kb;
}

/// h_m = invert_dG0(-dGm(c)), read modulo the c-line.
inline ModuleSection h_m_class(const DGMap& g, const DG0Inverse& inv) {
  ModuleSection h = invert_dG0(inv, -g.dGm.column("c"));
  ModuleSection out(g.tev, h.shift());
  for (std::size_t k = 0; k < g.tev->rank(); ++k)
    if (g.tev->name(k) != "c") out.add(k, h[k]);
  return out;
}

struct KernelSplitting {
  SplittingType type;
  std::map<int, long> h0;
};

/// h^0(ker dG0 (m)) = h^0(T(m)) - rank of dG0 on global sections, m = -3..3.
inline KernelSplitting kernel_splitting_type(const DGMap& g) {
  KernelSplitting ks;
  for (int m = -3; m <= 3; ++m) {
    QMatrix a = g.dG0.global_matrix(m);
    ks.h0[m] = static_cast<long>(a.cols()) - static_cast<long>(rank(a));
  }
  ks.type = splitting_from_h0(ks.h0, g.tev->rank() - g.target->rank());
  return ks;
}

}  // namespace twistkit
