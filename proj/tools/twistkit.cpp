#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "twistkit/report.hpp"

using namespace twistkit;

namespace {

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag) {
  if (opt->count()) return flag;
  if (const char* env = std::getenv("TWISTKIT_SEED")) {
    try {
      std::size_t pos = 0;
      auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw PreconditionError(std::string("TWISTKIT_SEED is not an unsigned integer: ") + env);
  }
  return kDefaultSeed;
}

void emit(const Json& j, const std::string& text, const std::string& format) {
  if (format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistkit: exact checks for a twisting family of lines on degree-d hypersurfaces"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string param_file;
  std::uint64_t seed_flag = 0;
  int figure = 0;
  long long n_prime = -1;
  DivisorArgs dv;
  long long dx = 0, dh = 0, dpsi = 0;

  auto common = [&](CLI::App* s, bool params) {
    s->add_option("--d", cfg.d, "degree of the hypersurface (d >= 3)")->required();
    s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    auto* so = s->add_option("--seed", seed_flag, "seed for random specializations (fallback: TWISTKIT_SEED)");
    if (params) s->add_option("--param-file", param_file, "JSON object of parameter values")->check(CLI::ExistingFile);
    return so;
  };

  auto* verify = app.add_subcommand("verify", "run every check for one d");
  auto* verify_seed = common(verify, true);
  verify->add_flag("--strict", cfg.strict, "documented errata count as failures");
  verify->add_flag("--timings", cfg.timings, "include per-check timings (output no longer byte-stable)");

  auto* tables = app.add_subcommand("tables", "print a recomputed table");
  common(tables, false);
  tables->add_option("--figure", figure, "figure number")->required()->check(CLI::IsMember({1, 3, 4, 5, 6}));

  auto* certify = app.add_subcommand("certify", "determinant certificate for d'q_s");
  auto* certify_seed = common(certify, true);
  certify->add_option("--n-prime", n_prime, "also report the cone extension to P^{n'}");

  auto* divisor = app.add_subcommand("divisor", "divisor class arithmetic");
  divisor->add_option("sub", dv.sub, "necessity | conic | schedule | chern")
      ->required()
      ->check(CLI::IsMember({"necessity", "conic", "schedule", "chern"}));
  divisor->add_option("--n", dv.n, "ambient dimension");
  divisor->add_option("--d", dv.d, "degree");
  divisor->add_option("--a0", dv.a0);
  divisor->add_option("--b1", dv.b1);
  divisor->add_option("--a", dv.a);
  auto* ox = divisor->add_option("--deg-x", dx);
  auto* oh = divisor->add_option("--deg-h", dh);
  auto* op = divisor->add_option("--deg-psi", dpsi);
  std::string dformat = "text";
  divisor->add_option("--format", dformat)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      check_degree(cfg.d);
      cfg.seed = resolve_seed(verify_seed, seed_flag);
      if (!param_file.empty()) cfg.params = read_param_file(param_file, cfg.d);
      VerificationReport r = cmd_verify(cfg);
      emit(r.to_json(), r.to_text(), cfg.format);
      return r.exit_code();
    }
    if (*tables) {
      check_degree(cfg.d);
      Computation c(cfg.d);
      Table t = render_table(c, figure);
      emit(t.to_json(), t.to_text(), cfg.format);
      return 0;
    }
    if (*certify) {
      check_degree(cfg.d);
      std::uint64_t seed = resolve_seed(certify_seed, seed_flag);
      Assignment params;
      if (!param_file.empty()) params = read_param_file(param_file, cfg.d);
      DerivativePipeline p(cfg.d);
      auto cert = certify_surjective(p.matrix(), seed, params);
      Json j = {{"d", cfg.d}, {"seed", seed}};
      j.update(certificate_json(cert, p.matrix()));
      std::string text = certificate_text(cert);
      if (n_prime >= 0) {
        auto ext = extend_to_n(cfg.d, static_cast<int>(n_prime));
        j["extension"] = {{"n", ext.n},
                          {"n_prime", ext.n_prime},
                          {"extra_O1_summands", ext.extra_summands},
                          {"rank_X", ext.rank_X},
                          {"rank_X_prime", ext.rank_X_prime},
                          {"quotient_rank_X", ext.quotient_rank_X},
                          {"quotient_rank_X_prime", ext.quotient_rank_X_prime},
                          {"transfers", ext.transfers}};
        text += "extension to n' = " + std::to_string(ext.n_prime) + ": " + std::to_string(ext.extra_summands) +
                " extra O(1) summands, quotient ranks " + std::to_string(ext.quotient_rank_X) + " / " +
                std::to_string(ext.quotient_rank_X_prime) + "\n";
      }
      emit(j, text, cfg.format);
      return cert.issued ? 0 : 1;
    }
    if (*divisor) {
      if (ox->count()) dv.deg_x = dx;
      if (oh->count()) dv.deg_h = dh;
      if (op->count()) dv.deg_psi = dpsi;
      DivisorResult r = cmd_divisor(dv);
      emit(r.json, r.text, dformat);
      return r.exit;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
