#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "twistkit/divisor.hpp"
#include "twistkit/tables.hpp"

namespace twistkit {

using Json = nlohmann::ordered_json;

inline constexpr std::uint64_t kDefaultSeed = 20080101;

struct RunConfig {
  int d = 3;
  Assignment params;
  std::uint64_t seed = kDefaultSeed;
  bool strict = false;
  bool timings = false;
  std::string format = "json";
};

inline void check_degree(int d) {
  if (d < 3) throw PreconditionError("d >= 3 required (got " + std::to_string(d) + ")");
  if (d > 12) throw PreconditionError("d <= 12 supported (got " + std::to_string(d) + ")");
}

/// Parameter file: a JSON object {name: value}, value an integer or a
/// rational string such as "3/2". A top-level "params" object is also accepted.
inline Assignment read_param_file(const std::string& path, int d) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open parameter file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw PreconditionError("parameter file " + path + ": " + e.what());
  }
  if (j.is_object() && j.contains("params")) j = j["params"];
  if (!j.is_object()) throw PreconditionError("parameter file must hold a JSON object");
  auto alpha = ParamAlphabet::for_degree(d);
  Assignment a;
  for (const auto& [k, v] : j.items()) {
    (void)alpha->index(k);
    if (v.is_number_integer()) a[k] = Rational(v.get<long>());
    else if (v.is_string()) a[k] = parse_rational(v.get<std::string>());
    else throw PreconditionError("parameter " + k + ": expected an integer or a rational string");
  }
  return a;
}

// ---------------------------------------------------------------- tables

struct Table {
  int figure = 0;
  int d = 0;
  std::string title;
  std::vector<std::pair<std::string, std::string>> rows;
  std::vector<std::string> notes;

  Json to_json() const {
    Json r = Json::array();
    for (const auto& [k, v] : rows) r.push_back({{"row", k}, {"entry", v}});
    return {{"figure", figure}, {"d", d}, {"title", title}, {"rows", r}, {"notes", notes}};
  }
  std::string to_text() const {
    std::string out = "figure " + std::to_string(figure) + " (d = " + std::to_string(d) + "): " + title + "\n";
    for (const auto& [k, v] : rows) out += k + ": " + v + "\n";
    for (const auto& n : notes) out += "# " + n + "\n";
    return out;
  }
};

namespace detail {

// "b(2,1)" -> "b_(2,1)"
inline std::string row_label(const std::string& name) {
  auto p = name.find('(');
  if (p == std::string::npos || (p > 0 && name[p - 1] == '_')) return name;
  return name.substr(0, p) + "_" + name.substr(p);
}

inline std::string render_tev(const ModuleSection& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const SForm& f = s[k];
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
      out += coefficient_prefix(it->second, out.empty());
      if (f.degree() > 0) out += binary_monomial("S0", it->first, "S1", f.degree() - it->first) + "·";
      out += row_label(s.module()->name(k));
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

inline Table render_table(const Computation& c, int fig) {
  const int d = c.d();
  Table t{fig, d, "", {}, {}};
  const auto& ctx = c.pipeline().context();
  switch (fig) {
    case 1:
      t.title = "dG0 rows over D; c-row is dGm";
      t.rows.emplace_back("c", c.c_row().to_string());
      for (const auto& [name, s] : c.figure1_rows()) t.rows.emplace_back(detail::row_label(name), s.to_string());
      break;
    case 3: {
      t.title = "basis of m O_{D_s}, s = [1:0], with preimages";
      auto syms = full_symbols(IndexSet(d));
      std::string zero;
      for (const auto& b : ctx.basis()) {
        std::string e;
        for (const auto& s : syms) {
          LinearForm im = ctx.image(s);
          if (!im.count(b)) continue;
          if (!e.empty()) e += "; ";
          e += s.name() + " -> " + to_string(im);
        }
        t.rows.emplace_back(b.name(), e);
      }
      for (const auto& s : syms)
        if (ctx.image(s).empty()) zero += (zero.empty() ? "" : ", ") + s.name();
      t.notes.push_back("sent to 0: " + zero);
      break;
    }
    case 4:
      t.title = "coefficient of w in dGm(c)";
      for (const auto& w : ctx.basis()) t.rows.emplace_back(w.name(), c.figure4_row(w).to_string());
      t.notes.push_back("v-rows carry the factor 2 from d(Z^2)/dZ");
      break;
    case 5:
      t.title = "-dG0^{-1} of the Figure 4 rows";
      for (const auto& w : ctx.basis()) t.rows.emplace_back(w.name(), detail::render_tev(c.pipeline().step3(w)));
      t.notes.push_back("v-rows carry the factor 2 from d(Z^2)/dZ");
      break;
    case 6: {
      t.title = "d'q_s";
      const DerivMatrix& M = c.pipeline().matrix();
      for (std::size_t r = 0; r < M.size(); ++r) {
        std::string e;
        for (std::size_t k = 0; k < M.columns.size(); ++k) {
          const ParamPoly& v = M.entries[r][k];
          if (v.is_zero()) continue;
          e += detail::coefficient_prefix(ArtinElement(v), e.empty()) + "(1/S0)·" + detail::row_label(M.columns[k]);
        }
        t.rows.emplace_back(M.rows[r].name(), e.empty() ? "0" : e);
      }
      t.notes.push_back("v-rows carry the factor 2 from d(Z^2)/dZ");
      break;
    }
    default:
      throw PreconditionError("figure must be one of 1, 3, 4, 5, 6");
  }
  return t;
}

// ---------------------------------------------------------------- certificate

inline Json certificate_json(const GenericityCertificate& cert, const DerivMatrix& M) {
  Json factors = Json::array(), conditions = Json::array();
  for (const auto& f : cert.factors) {
    factors.push_back({{"factor", f.poly.to_string()}, {"multiplicity", f.multiplicity},
                       {"irreducible", f.irreducible ? Json("yes") : Json("unknown")}});
    conditions.push_back(f.poly.to_string() + " != 0");
  }
  Json witness = Json::object();
  for (const auto& [k, v] : cert.witness) witness[k] = v.get_str();
  Json rows = Json::array();
  for (std::size_t r = 0; r < M.size(); ++r) {
    Json e = Json::array();
    for (const auto& v : M.entries[r]) e.push_back(v.to_string());
    rows.push_back({{"row", M.rows[r].name()}, {"entries", e}});
  }
  Json j = {{"issued", cert.issued},
            {"reason", cert.reason},
            {"rank", cert.elimination.rank},
            {"size", M.size()},
            {"determinant", cert.det_string()},
            {"expanded_terms", cert.det ? Json(cert.det->term_count()) : Json(nullptr)},
            {"factors", factors},
            {"conditions", conditions},
            {"vanishing", cert.vanishing},
            {"witness", witness},
            {"witness_value", cert.witness_value.get_str()}};
  if (cert.modular)
    j["modular"] = {{"prime", std::to_string(modp::kPrime)}, {"trials", cert.modular->trials},
                    {"agreements", cert.modular->agreements}};
  j["matrix"] = {{"normalization", M.normalization}, {"columns", M.columns}, {"rows", rows}};
  return j;
}

inline std::string certificate_text(const GenericityCertificate& cert) {
  std::string out = std::string("certificate: ") + (cert.issued ? "issued" : "refused") + "\n";
  if (!cert.reason.empty()) out += "reason: " + cert.reason + "\n";
  out += "determinant: " + cert.det_string() + "\n";
  for (const auto& f : cert.factors) out += "condition: " + f.poly.to_string() + " != 0\n";
  for (const auto& v : cert.vanishing) out += "vanishing: " + v + "\n";
  if (cert.issued) {
    out += "witness:";
    for (const auto& [k, v] : cert.witness) out += " " + k + "=" + v.get_str();
    out += " (det = " + cert.witness_value.get_str() + ")\n";
  }
  if (cert.modular)
    out += "modular: " + std::to_string(cert.modular->agreements) + "/" + std::to_string(cert.modular->trials) + " agree\n";
  return out;
}

// ---------------------------------------------------------------- verify

struct CheckEntry {
  std::string name;
  Status status = Status::Pass;
  std::string details;
  double ms = 0;
};

struct VerificationReport {
  RunConfig config;
  std::vector<CheckEntry> checks;
  std::vector<Table> figures;
  Json certificate;
  std::string certificate_text;

  Status overall() const {
    Status s = Status::Pass;
    for (const auto& c : checks) s = worst(s, c.status);
    return s;
  }
  int exit_code() const { return overall() == Status::Fail ? 1 : 0; }

  Json to_json() const {
    Json checks_j = Json::array();
    for (const auto& c : checks) {
      Json e = {{"name", c.name}, {"status", to_string(c.status)}, {"details", c.details}};
      checks_j.push_back(e);
    }
    Json figs = Json::object();
    for (const auto& t : figures) figs[std::to_string(t.figure)] = t.to_json();
    Json params = Json::object();
    for (const auto& [k, v] : config.params) params[k] = v.get_str();
    Json j = {{"tool", "twistkit"},
              {"d", config.d},
              {"seed", config.seed},
              {"mode", config.strict ? "strict" : "up-to-documented-constants"},
              {"params", params},
              {"status", to_string(overall())},
              {"checks", checks_j},
              {"figures", figs},
              {"certificate", certificate}};
    if (config.timings) {
      Json t = Json::object();
      for (const auto& c : checks) t[c.name] = c.ms;
      j["timings_ms"] = t;
    }
    return j;
  }

  std::string to_text() const {
    std::ostringstream o;
    o << "twistkit verify, d = " << config.d << ", seed = " << config.seed
      << (config.strict ? ", strict" : "") << "\n";
    for (const auto& c : checks) {
      o << "[" << to_string(c.status) << "] " << c.name;
      if (!c.details.empty()) o << ": " << c.details;
      if (config.timings) o << " (" << c.ms << " ms)";
      o << "\n";
    }
    o << certificate_text;
    o << "overall: " << to_string(overall()) << "\n";
    return o.str();
  }
};

namespace detail {

template <class F>
void timed(VerificationReport& r, const std::string& name, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  CheckEntry e{name, Status::Pass, "", 0};
  f(e);
  e.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (r.config.strict && e.status == Status::PassWithErratum) {
    e.status = Status::Fail;
    e.details += " [strict]";
  }
  r.checks.push_back(std::move(e));
}

inline Status pass_if(bool b) { return b ? Status::Pass : Status::Fail; }

}  // namespace detail

inline VerificationReport cmd_verify(const RunConfig& cfg) {
  check_degree(cfg.d);
  const int d = cfg.d;
  VerificationReport r;
  r.config = cfg;
  std::optional<Computation> comp;

  detail::timed(r, "G vanishes over D", [&](CheckEntry& e) {
    auto g = check_G_vanishes(d);
    e.status = detail::pass_if(g.result.pass);
    e.details = g.result.details;
  });
  detail::timed(r, "D_s maximal at [1:0]", [&](CheckEntry& e) {
    auto m = check_Ds_maximal(d, 1, 0);
    e.status = detail::pass_if(m.result.pass);
    e.details = m.result.details;
  });
  comp.emplace(d);
  const DGMap& g = comp->dgD();
  std::optional<SurjectivityCheck> surj;
  detail::timed(r, "dG0 signed permutation", [&](CheckEntry& e) {
    surj = check_dG_surjective(g);
    e.status = detail::pass_if(surj->result.pass && g.e_rows_consistent);
    e.details = surj->result.details;
  });
  detail::timed(r, "kernel composes to zero", [&](CheckEntry& e) {
    if (!surj->inverse) {
      e.status = Status::Fail;
      e.details = "no inverse";
      return;
    }
    KernelBasis kb = kernel_basis(g, *surj->inverse);
    e.status = detail::pass_if(kb.leading_in_kernel && kb.composition_zero);
    e.details = "rank " + std::to_string(kb.source->rank());
  });
  detail::timed(r, "kernel splitting type", [&](CheckEntry& e) {
    KernelSplitting ks = kernel_splitting_type(g);
    std::vector<int> want(static_cast<std::size_t>(d * d - d - 2), 0);
    want.push_back(1);
    e.status = detail::pass_if(ks.type == SplittingType(want));
    e.details = ks.type.to_string();
  });
  for (int fig : {1, 3, 4, 5, 6}) {
    detail::timed(r, "figure " + std::to_string(fig), [&](CheckEntry& e) {
      FigureCheck fc = compare_figure(*comp, fig);
      e.status = fc.overall();
      e.details = std::to_string(fc.count(Status::Pass)) + " rows match";
      if (auto n = fc.count(Status::PassWithErratum)) e.details += ", " + std::to_string(n) + " with documented erratum";
      for (const auto& row : fc.rows)
        if (row.status != Status::Pass) e.details += "; " + row.row + ": " + row.details;
    });
    r.figures.push_back(render_table(*comp, fig));
  }
  const DerivMatrix& M = comp->pipeline().matrix();
  detail::timed(r, "d'q_s square", [&](CheckEntry& e) {
    e.status = detail::pass_if(M.size() == static_cast<std::size_t>(d * d - d - 2) && M.columns.size() == M.size());
    e.details = std::to_string(M.size()) + " x " + std::to_string(M.columns.size());
  });
  std::optional<GenericityCertificate> cert;
  detail::timed(r, "genericity certificate", [&](CheckEntry& e) {
    cert = certify_surjective(M, cfg.seed, cfg.params);
    e.status = detail::pass_if(cert->issued);
    e.details = cert->issued ? cert->det_string() : cert->reason;
    for (const auto& v : cert->vanishing) e.details += "; " + v + " = 0";
  });
  detail::timed(r, "modular cross-check", [&](CheckEntry& e) {
    e.status = detail::pass_if(cert->modular && cert->modular->ok());
    if (cert->modular)
      e.details = std::to_string(cert->modular->agreements) + "/" + std::to_string(cert->modular->trials) + " specializations agree";
  });
  r.certificate = certificate_json(*cert, M);
  r.certificate_text = twistkit::certificate_text(*cert);
  return r;
}

// ---------------------------------------------------------------- divisor

struct DivisorArgs {
  std::string sub;
  long long n = 0, d = 0, a0 = 0, b1 = 0, a = 0;
  std::optional<long long> deg_x, deg_h, deg_psi;
};

struct DivisorResult {
  Json json;
  std::string text;
  int exit = 0;
};

inline DivisorResult cmd_divisor(const DivisorArgs& a) {
  DivisorResult r;
  if (a.sub == "necessity") {
    Feasibility f;
    if (a.deg_x || a.deg_h || a.deg_psi) {
      if (!(a.deg_x && a.deg_h && a.deg_psi)) throw PreconditionError("give all of --deg-x, --deg-h, --deg-psi");
      f = necessity_check(a.n, a.d, Degrees{*a.deg_x, *a.deg_h, *a.deg_psi});
    } else {
      f = necessity_search(a.n, a.d);
    }
    r.json = {{"n", a.n}, {"d", a.d}, {"feasible", f.feasible}, {"degree", f.degree}, {"reason", f.reason}};
    r.text = f.feasible ? "feasible: degree " + std::to_string(f.degree) : "infeasible: " + f.reason;
  } else if (a.sub == "conic") {
    auto c = conic_invariants(a.n, a.d);
    r.json = {{"n", c.n}, {"d", c.d}, {"total_dim", c.total_dim}, {"sing_dim_bound", c.sing_dim_bound},
              {"fiber_dim", c.fiber_dim}, {"omega_twist", c.omega_twist}, {"fano", c.fano}};
    r.text = "total_dim " + std::to_string(c.total_dim) + "\nsing_dim_bound " + std::to_string(c.sing_dim_bound) +
             "\nfiber_dim " + std::to_string(c.fiber_dim) + "\nomega_twist " + std::to_string(c.omega_twist) +
             "\nfano " + (c.fano ? "true" : "false");
  } else if (a.sub == "schedule") {
    auto s = psi_schedule(a.a0, a.b1, a.a);
    r.json = {{"a0", s.a0}, {"b1", s.b1}, {"a", s.a}, {"a1", s.a1}, {"m", s.m}, {"r_prime", s.r_prime},
              {"case", s.even_case ? "even" : "odd"}};
    r.text = "m=" + std::to_string(s.m) + " r'=" + std::to_string(s.r_prime) + " a1=" + std::to_string(s.a1) +
             " case=" + (s.even_case ? "even" : "odd");
  } else if (a.sub == "chern") {
    DivClass p = chern_tev_pn(a.n);
    r.json = {{"n", a.n}, {"pn", p.to_string()}, {"pn_psi", p.psi_string()}};
    r.text = "C1(T_ev,P^n) = " + p.to_string() + " = " + p.psi_string();
    if (a.d > 0) {
      DivClass x = chern_tev_X(a.n, a.d);
      r.json["d"] = a.d;
      r.json["X"] = x.to_string();
      r.json["X_psi"] = x.psi_string();
      r.text += "\nC1(zeta^*T_ev,X) = " + x.to_string() + " = " + x.psi_string();
    }
  } else {
    throw PreconditionError("divisor subcommand must be necessity, conic, schedule or chern");
  }
  return r;
}

}  // namespace twistkit
