#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "twistkit/error.hpp"
#include "twistkit/param_poly.hpp"

namespace twistkit::modp {

/// 2^62 - 57, prime.
inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 62) - 57;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}
inline std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t inv(std::uint64_t a) {
  if (a == 0) throw PreconditionError("inverse of zero modulo p");
  return pow(a, kPrime - 2);
}

inline std::uint64_t reduce(const Integer& z) {
  static_assert(sizeof(unsigned long) == 8, "modular reduction assumes 64-bit unsigned long");
  return mpz_fdiv_ui(z.get_mpz_t(), kPrime);
}

inline std::uint64_t reduce(const Rational& q) {
  std::uint64_t den = reduce(Integer(q.get_den()));
  if (den == 0) throw PreconditionError("denominator vanishes modulo p");
  return mul(reduce(Integer(q.get_num())), inv(den));
}

/// Value of p at dense parameter values (index = alphabet position).
inline std::uint64_t evaluate(const ParamPoly& p, const std::vector<std::uint64_t>& values) {
  std::uint64_t sum = 0;
  for (const auto& [m, c] : p.terms()) {
    std::uint64_t t = reduce(c);
    for (const auto& [v, e] : m.factors()) {
      if (v >= values.size()) throw StructuralError("parameter index beyond specialization vector");
      t = mul(t, pow(values[v], e));
    }
    sum = add(sum, t);
  }
  return sum;
}

using Matrix = std::vector<std::vector<std::uint64_t>>;

/// Rank and determinant (0 unless square and full rank) over F_p.
inline std::pair<std::size_t, std::uint64_t> rank_det(Matrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) {
      det = 0;
      continue;
    }
    if (piv != rank) {
      std::swap(a[piv], a[rank]);
      det = sub(0, det);
    }
    det = mul(det, a[rank][c]);
    std::uint64_t iv = inv(a[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      std::uint64_t f = mul(a[r][c], iv);
      for (std::size_t k = c; k < cols; ++k) a[r][k] = sub(a[r][k], mul(f, a[rank][k]));
    }
    ++rank;
  }
  if (rows != cols || rank < rows) det = 0;
  return {rank, det};
}

/// Uniform values in [1, p) for every parameter of the alphabet.
inline std::vector<std::uint64_t> random_point(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(1, kPrime - 1);
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace twistkit::modp
