#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twistkit/error.hpp"
#include "twistkit/modular.hpp"
#include "twistkit/param_poly.hpp"

namespace twistkit {

using PolyMatrix = std::vector<std::vector<ParamPoly>>;

struct RankDet {
  std::size_t rank = 0;
  std::optional<ParamPoly> det;   // square, full rank, expanded runs only
  std::vector<ParamPoly> pivots;  // leading minors of the permuted matrix (plain pivots if not expanded)
  /// Entries removed by expansion along a row or column with one nonzero
  /// entry, followed by the determinant of the remaining core. Their product
  /// is det up to sign.
  std::vector<ParamPoly> singletons;
  std::optional<ParamPoly> core_det;
};

namespace detail {

inline std::size_t poly_cost(const ParamPoly& p) { return p.term_count() * (1 + p.total_degree()); }

}  // namespace detail

/// Rank over the fraction field, exact determinant and pivots.
///
/// Rows or columns with a single nonzero entry are peeled off first (Laplace
/// expansion; this keeps the sparse triangular parts out of the elimination),
/// then Bareiss fraction-free elimination runs on the rest with the cheapest
/// available pivot. With expand = false the product of the singletons is never
/// formed: det stays empty and the caller works with singletons and core_det.
inline RankDet ff_rank_det(const PolyMatrix& M, bool expand = true) {
  const std::size_t R = M.size();
  const std::size_t C = R ? M[0].size() : 0;
  for (const auto& row : M)
    if (row.size() != C) throw StructuralError("ragged matrix");
  RankDet out;
  std::vector<std::size_t> rows(R), cols(C);
  for (std::size_t i = 0; i < R; ++i) rows[i] = i;
  for (std::size_t j = 0; j < C; ++j) cols[j] = j;
  int sign = 1;
  ParamPoly acc(1);

  auto take = [&](std::size_t rpos, std::size_t cpos) {
    const ParamPoly& v = M[rows[rpos]][cols[cpos]];
    if ((rpos + cpos) % 2) sign = -sign;
    out.singletons.push_back(v);
    if (expand) acc *= v;
    out.pivots.push_back(expand ? acc : v);
    rows.erase(rows.begin() + static_cast<long>(rpos));
    cols.erase(cols.begin() + static_cast<long>(cpos));
  };

  for (bool again = true; again && !rows.empty() && !cols.empty();) {
    again = false;
    for (std::size_t rp = 0; rp < rows.size() && !again; ++rp) {
      std::size_t count = 0, at = 0;
      for (std::size_t cp = 0; cp < cols.size(); ++cp)
        if (!M[rows[rp]][cols[cp]].is_zero()) ++count, at = cp;
      if (count == 1) take(rp, at), again = true;
    }
    for (std::size_t cp = 0; cp < cols.size() && !again; ++cp) {
      std::size_t count = 0, at = 0;
      for (std::size_t rp = 0; rp < rows.size(); ++rp)
        if (!M[rows[rp]][cols[cp]].is_zero()) ++count, at = rp;
      if (count == 1) take(at, cp), again = true;
    }
  }

  // Bareiss on the core.
  const std::size_t n = rows.size(), m = cols.size();
  PolyMatrix a(n, std::vector<ParamPoly>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) a[i][j] = M[rows[i]][cols[j]];
  ParamPoly prev(1);
  std::size_t k = 0;
  for (; k < std::min(n, m); ++k) {
    std::size_t pr = n, pc = m, best = 0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < m; ++j)
        if (!a[i][j].is_zero() && (pr == n || detail::poly_cost(a[i][j]) < best))
          pr = i, pc = j, best = detail::poly_cost(a[i][j]);
    if (pr == n) break;
    if (pr != k) std::swap(a[pr], a[k]), sign = -sign;
    if (pc != k) {
      for (auto& row : a) std::swap(row[pc], row[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        ParamPoly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        if (k == 0) {
          a[i][j] = std::move(num);
        } else {
          auto q = num.divide_exact(prev);
          if (!q) throw InvariantViolation("Bareiss step is not exact");
          a[i][j] = std::move(*q);
        }
      }
      a[i][k] = ParamPoly();
    }
    prev = a[k][k];
    out.pivots.push_back(expand ? acc * a[k][k] : a[k][k]);
  }
  out.rank = out.singletons.size() + k;
  if (R == C && out.rank == R) {
    out.core_det = n == 0 ? ParamPoly(1) : a[n - 1][n - 1];
    if (sign < 0) out.core_det = -*out.core_det;
    if (expand) out.det = acc * *out.core_det;
  }
  return out;
}

/// Rank and determinant of M at random points modulo p, compared with the
/// symbolic result. Agreement at every point is expected; a disagreement
/// means the symbolic computation is wrong (or the point is degenerate, which
/// has probability about deg/p).
struct SpecializationCheck {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::vector<std::string> mismatches;
  bool ok() const noexcept { return trials > 0 && agreements == trials; }
};

inline SpecializationCheck specialization_check(const PolyMatrix& M, const RankDet& symbolic,
                                                std::size_t alphabet_size, std::size_t trials, std::uint64_t seed) {
  SpecializationCheck out;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto point = modp::random_point(alphabet_size, rng);
    modp::Matrix a;
    for (const auto& row : M) {
      a.emplace_back();
      for (const auto& e : row) a.back().push_back(modp::evaluate(e, point));
    }
    auto [r, det] = modp::rank_det(a);
    bool agree = r == symbolic.rank;
    if (symbolic.det) {
      agree = agree && det == modp::evaluate(*symbolic.det, point);
    } else if (symbolic.core_det) {
      std::uint64_t v = modp::evaluate(*symbolic.core_det, point);
      for (const auto& s : symbolic.singletons) v = modp::mul(v, modp::evaluate(s, point));
      agree = agree && det == v;
    }
    ++out.trials;
    if (agree) ++out.agreements;
    else out.mismatches.push_back("trial " + std::to_string(t) + ": rank " + std::to_string(r));
  }
  return out;
}

}  // namespace twistkit
