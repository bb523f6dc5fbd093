#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/error.hpp"

namespace twistkit {

/// Divisor class cx*x + ch*h on the space of pointed lines.
struct DivClass {
  long long cx = 0;
  long long ch = 0;

  /// Coordinates (c_psi, c_h') in the basis {psi, h}, psi = x - 2h.
  std::pair<long long, long long> psi_view() const noexcept { return {cx, ch + 2 * cx}; }
  static DivClass from_psi(long long c_psi, long long c_h) noexcept { return {c_psi, c_h - 2 * c_psi}; }

  friend DivClass operator+(DivClass a, DivClass b) noexcept { return {a.cx + b.cx, a.ch + b.ch}; }
  friend DivClass operator-(DivClass a, DivClass b) noexcept { return {a.cx - b.cx, a.ch - b.ch}; }
  friend auto operator<=>(const DivClass&, const DivClass&) = default;

  std::string to_string() const {
    auto term = [](long long c, const char* v, bool first) {
      std::string s;
      if (c < 0) s += first ? "-" : " - ";
      else if (!first) s += " + ";
      long long a = c < 0 ? -c : c;
      if (a != 1) s += std::to_string(a);
      return s + v;
    };
    if (cx == 0 && ch == 0) return "0";
    if (cx == 0) return term(ch, "h", true);
    std::string s = term(cx, "x", true);
    if (ch != 0) s += term(ch, "h", false);
    return s;
  }
  std::string psi_string() const {
    auto [p, h] = psi_view();
    return std::to_string(h) + "h + " + std::to_string(p) + "psi";
  }
};

inline long long triangular(long long d) { return d * (d + 1) / 2; }

inline DivClass chern_tev_pn(long long n) {
  if (n < 2) throw PreconditionError("n >= 2 required");
  return {n, -(n - 1)};
}

/// Class of the pushforward pi_*(g^*O(d)(-sigma)) over the universal family.
inline DivClass pushforward_class(long long d) { return {triangular(d), -d}; }

inline DivClass chern_tev_X(long long n, long long d) {
  if (n < 2 || d < 1) throw PreconditionError("n >= 2 and d >= 1 required");
  return chern_tev_pn(n) - pushforward_class(d);
}

/// One displayed identity: a class and the forms it is written in.
struct ClassIdentity {
  std::string name;
  struct Form {
    std::string text;
    DivClass value;
  };
  std::vector<Form> forms;
  bool agree() const {
    for (const auto& f : forms)
      if (f.value != forms.front().value) return false;
    return true;
  }
};

/// The P^n class as printed: nx-(n-1)h and (n+1)x+n psi.
inline ClassIdentity pn_identity_printed(long long n) {
  return {"C1(T_ev,P^n)",
          {{"nx-(n-1)h", chern_tev_pn(n)}, {"(n+1)x+n*psi", DivClass{n + 1, 0} + DivClass::from_psi(n, 0)}}};
}

/// Same class with the psi-form read as (n+1)h + n psi.
inline ClassIdentity pn_identity(long long n) {
  return {"C1(T_ev,P^n)", {{"nx-(n-1)h", chern_tev_pn(n)}, {"(n+1)h+n*psi", DivClass::from_psi(n, n + 1)}}};
}

inline ClassIdentity pushforward_identity(long long d) {
  return {"C1(pi_*(g^*O(d)(-sigma)))",
          {{"d(d+1)/2*x-d*h", pushforward_class(d)}, {"d^2*h+d(d+1)/2*psi", DivClass::from_psi(triangular(d), d * d)}}};
}

inline ClassIdentity x_identity(long long n, long long d) {
  return {"C1(zeta^*T_ev,X)",
          {{"(n-d(d+1)/2)x-(n-d-1)h", DivClass{n - triangular(d), -(n - d - 1)}},
           {"(n+1-d^2)h+(n-d(d+1)/2)psi", DivClass::from_psi(n - triangular(d), n + 1 - d * d)},
           {"C1(T_ev,P^n)-pushforward", chern_tev_X(n, d)}}};
}

/// Degrees of zeta^*x, zeta^*h, zeta^*psi on the base line.
struct Degrees {
  long long x = 0;
  long long h = 0;
  long long psi = 0;
};

struct Feasibility {
  bool feasible = false;
  long long degree = 0;  // deg C1(zeta^* T_ev,X)
  std::string reason;
};

namespace detail {
inline void check_hypothesis(long long n, long long d) {
  if (d < 1 || 2 * d > n) throw PreconditionError("hypothesis d <= n/2 fails for (n,d) = (" + std::to_string(n) + "," + std::to_string(d) + ")");
}
}  // namespace detail

/// Positivity of deg C1(zeta^* T_ev,X) for the given degrees.
inline Feasibility necessity_check(long long n, long long d, const Degrees& g) {
  detail::check_hypothesis(n, d);
  if (g.x < 0 || g.h < 0 || g.psi > 0) throw PreconditionError("need deg x >= 0, deg h >= 0, deg psi <= 0");
  if (g.psi != g.x - 2 * g.h) throw PreconditionError("degrees violate psi = x - 2h");
  const long long T = triangular(d);
  Feasibility f;
  if (g.x == 0) {
    f.degree = -(n - d - 1) * g.h;
    f.feasible = f.degree > 0;
    if (!f.feasible) f.reason = "deg = -(n-d-1)*deg_h = " + std::to_string(f.degree) + " <= 0";
    return f;
  }
  if (n + 1 <= T) {
    f.reason = "n+1-d(d+1)/2 = " + std::to_string(n + 1 - T) + " <= 0 forces pr constant (deg_x = 0)";
    return f;
  }
  f.degree = (n + 1 - d * d) * g.h + (n - T) * g.psi;
  f.feasible = f.degree > 0;
  if (!f.feasible)
    f.reason = "n+1-d^2 = " + std::to_string(n + 1 - d * d) + ", deg = " + std::to_string(f.degree) + " <= 0";
  return f;
}

/// Searches all admissible degree vectors with deg_h <= bound, -bound <= deg_psi.
inline Feasibility necessity_search(long long n, long long d, long long bound = 4) {
  detail::check_hypothesis(n, d);
  Feasibility last;
  for (long long h = 0; h <= bound; ++h)
    for (long long psi = 0; psi >= -bound; --psi) {
      long long x = psi + 2 * h;
      if (x < 0) continue;
      Feasibility f = necessity_check(n, d, Degrees{x, h, psi});
      if (f.feasible) return f;
    }
  const long long T = triangular(d);
  if (n + 1 <= T) last.reason = "n+1-d(d+1)/2 = " + std::to_string(n + 1 - T) + " <= 0 and deg = -(n-d-1)*deg_h <= 0";
  else last.reason = "n+1-d^2 = " + std::to_string(n + 1 - d * d);
  return last;
}

struct TwistSchedule {
  long long a0 = 0, b1 = 0, a = 0, a1 = 0, m = 0, r_prime = 0;
  bool even_case = true;
  bool valid() const noexcept { return a == m * a0 + 2 * r_prime && 0 <= r_prime && r_prime < a0 && m * b1 - r_prime > 0; }
};

inline long long ceil_div(long long p, long long q) { return p / q + ((p % q != 0) && ((p > 0) == (q > 0))); }

inline long long schedule_a1(long long a0, long long b1) {
  if (a0 <= 0 || b1 < 1) throw PreconditionError("need a0 > 0 and b1 >= 1");
  return 2 * a0 * ceil_div(a0 + b1, 2 * b1);
}

/// Precomposition degree m and section shift r' with a = m*a0 + 2r'.
inline TwistSchedule psi_schedule(long long a0, long long b1, long long a) {
  TwistSchedule s{a0, b1, a, schedule_a1(a0, b1), 0, 0, true};
  if (a < s.a1) throw PreconditionError("a = " + std::to_string(a) + " < a1 = " + std::to_string(s.a1));
  if (a0 % 2 == 0 && a % 2 != 0)
    throw PreconditionError("a0 even requires a even (the odd case needs a + a0 even)");
  if (a % 2 == 0) {
    long long q = a / (2 * a0), r = a % (2 * a0);
    s.m = 2 * q;
    s.r_prime = r / 2;
  } else {
    long long q = (a + a0) / (2 * a0), r = (a + a0) % (2 * a0);
    s.m = 2 * q - 1;
    s.r_prime = r / 2;
    s.even_case = false;
  }
  if (!s.valid()) throw InvariantViolation("schedule invariants fail for a = " + std::to_string(a));
  return s;
}

struct ConicInvariants {
  long long n = 0, d = 0;
  long long total_dim = 0;
  long long sing_dim_bound = 0;
  long long fiber_dim = 0;
  long long omega_twist = 0;
  bool fano = false;
};

inline ConicInvariants conic_invariants(long long n, long long d) {
  if (d < 1 || d > n - 2) throw PreconditionError("need 1 <= d <= n-2");
  return {n, d, 3 * n - 2 * d - 1, 2 * n - d - 1, n + 1 - 2 * d, -n - 1 + d * d, n >= d * d};
}

}  // namespace twistkit
