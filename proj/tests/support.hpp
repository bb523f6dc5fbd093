#pragma once

#include <random>

#include "twistkit/artin.hpp"
#include "twistkit/param_poly.hpp"

namespace tk_test {

using namespace twistkit;

// Small random parameter polynomial: up to three terms of degree <= 2.
inline ParamPoly random_param(const AlphabetPtr& alpha, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), var(0, static_cast<int>(alpha->size()) - 1), nterms(0, 3);
  ParamPoly p;
  for (int t = nterms(rng); t > 0; --t) {
    ParamPoly m(coef(rng));
    for (int k = var(rng) % 3; k > 0; --k) m *= ParamPoly::variable(alpha, static_cast<std::size_t>(var(rng)));
    p += m;
  }
  return p;
}

// Random element of D' with a handful of nilpotent terms.
inline ArtinElement random_artin(const ContextPtr& ctx, bool nilpotent_only, std::mt19937_64& rng) {
  const int d = ctx->d;
  auto alpha = ParamAlphabet::for_degree(d);
  auto syms = full_symbols(IndexSet(d));
  std::uniform_int_distribution<std::size_t> pick(0, syms.size() - 1);
  ArtinElement a(ctx, nilpotent_only ? ParamPoly() : random_param(alpha, rng));
  for (int k = 0; k < 4; ++k) a.add_nil(syms[pick(rng)], random_param(alpha, rng));
  return a;
}

}  // namespace tk_test
