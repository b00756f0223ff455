#include "hrz/ec.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "hrz/modarith.hpp"

namespace hrz::ec {

using namespace hrz::mod;

namespace {

struct BInvariants {
  mpz_class b2, b4, b6, b8;
};

BInvariants b_invariants(const CurveQ& e) {
  BInvariants b;
  b.b2 = e.a1 * e.a1 + 4 * e.a2;
  b.b4 = 2 * e.a4 + e.a1 * e.a3;
  b.b6 = e.a3 * e.a3 + 4 * e.a6;
  b.b8 = e.a1 * e.a1 * e.a6 + 4 * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 + e.a2 * e.a3 * e.a3 -
         e.a4 * e.a4;
  return b;
}

}  // namespace

mpz_class discriminant(const CurveQ& e) {
  auto b = b_invariants(e);
  return -b.b2 * b.b2 * b.b8 - 8 * b.b4 * b.b4 * b.b4 - 27 * b.b6 * b.b6 + 9 * b.b2 * b.b4 * b.b6;
}

mpq_class j_invariant(const CurveQ& e) {
  mpz_class d = discriminant(e);
  if (d == 0) throw singular_model_error("j_invariant: singular model (discriminant 0)");
  auto b = b_invariants(e);
  mpz_class c4 = b.b2 * b.b2 - 24 * b.b4;
  mpq_class j(c4 * c4 * c4, d);
  j.canonicalize();
  return j;
}

bool is_cm(const CurveQ& e) {
  if (e.cm.has_value()) return *e.cm;
  // the 13 rational CM j-invariants
  static const char* kCmJ[] = {
      "0",       "1728",       "-3375",         "8000",          "54000",
      "287496",  "-32768",     "16581375",      "-12288000",     "-884736",
      "-884736000", "-147197952000", "-262537412640768000"};
  mpq_class j = j_invariant(e);
  if (j.get_den() != 1) return false;
  for (const char* s : kCmJ)
    if (j.get_num() == mpz_class(s)) return true;
  return false;
}

ReducedCurve reduce(const CurveQ& e, uint64_t p) {
  ReducedCurve rc;
  rc.p = p;
  const mpz_class* as[5] = {&e.a1, &e.a2, &e.a3, &e.a4, &e.a6};
  mpz_class t, pz(static_cast<unsigned long>(p));
  for (int i = 0; i < 5; ++i) {
    mpz_mod(t.get_mpz_t(), as[i]->get_mpz_t(), pz.get_mpz_t());
    rc.a[i] = t.get_ui();
  }
  mpz_class m = e.conductor.has_value() ? *e.conductor : discriminant(e);
  mpz_mod(t.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
  rc.good = (t != 0);
  return rc;
}

namespace {

// ---- naive enumeration ------------------------------------------------------

uint64_t count_naive(const ReducedCurve& rc) {
  uint64_t p = rc.p;
  uint64_t a1 = rc.a[0], a2 = rc.a[1], a3 = rc.a[2], a4 = rc.a[3], a6 = rc.a[4];
  if (p == 2) {
    uint64_t n = 1;
    for (uint64_t x = 0; x < 2; ++x)
      for (uint64_t y = 0; y < 2; ++y) {
        uint64_t lhs = (y * y + a1 * x * y + a3 * y) % 2;
        uint64_t rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
        if (lhs == rhs) ++n;
      }
    return n;
  }
  // odd p: complete the square, count via the quadratic character of
  //   g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6
  uint64_t b2 = addmod(mulmod(a1, a1, p), mulmod(4 % p, a2, p), p);
  uint64_t b4 = addmod(mulmod(2 % p, a4, p), mulmod(a1, a3, p), p);
  uint64_t b6 = addmod(mulmod(a3, a3, p), mulmod(4 % p, a6, p), p);
  const bool use_table = p <= (1ull << 26);
  std::vector<uint8_t> sq;
  if (use_table) {
    sq.assign(p, 0);
    for (uint64_t y = 0; y <= (p - 1) / 2; ++y) sq[mulmod(y, y, p)] = 1;
  }
  uint64_t n = 1;  // point at infinity
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t g = mulmod(addmod(mulmod(addmod(mulmod(4 % p, x, p), b2, p), x, p),
                               mulmod(2 % p, b4, p), p),
                        x, p);
    g = addmod(g, b6, p);
    if (g == 0)
      n += 1;
    else if (use_table ? sq[g] : (legendre(g, p) == 1))
      n += 2;
  }
  return n;
}

// ---- BSGS over the short Weierstrass form (p >= 5) --------------------------

struct Pt {
  uint64_t x = 0, y = 0;
  bool inf = true;
};

Pt ec_add(const Pt& P, const Pt& Q, uint64_t A, uint64_t p) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  uint64_t lam;
  if (P.x == Q.x) {
    if (addmod(P.y, Q.y, p) == 0) return {};  // P = -Q
    uint64_t num = addmod(mulmod(3, mulmod(P.x, P.x, p), p), A, p);
    lam = mulmod(num, invmod(addmod(P.y, P.y, p), p), p);
  } else {
    lam = mulmod(submod(Q.y, P.y, p), invmod(submod(Q.x, P.x, p), p), p);
  }
  Pt R;
  R.inf = false;
  R.x = submod(mulmod(lam, lam, p), addmod(P.x, Q.x, p), p);
  R.y = submod(mulmod(lam, submod(P.x, R.x, p), p), P.y, p);
  return R;
}

Pt ec_mul(uint64_t k, Pt P, uint64_t A, uint64_t p) {
  Pt R;
  while (k) {
    if (k & 1) R = ec_add(R, P, A, p);
    P = ec_add(P, P, A, p);
    k >>= 1;
  }
  return R;
}

struct HasseWindow {
  uint64_t lo, hi;  // [p+1-W, p+1+W], W = ceil(2*sqrt(p))
};

HasseWindow hasse_window(uint64_t p) {
  uint64_t w = isqrt(4 * p);
  if (w * w < 4 * p) ++w;
  return {p + 1 - w, p + 1 + w};
}

// All s in the Hasse window with s*P = O.  Non-empty: the group order is one.
std::vector<uint64_t> window_kills(const Pt& P, uint64_t A, uint64_t p) {
  HasseWindow hw = hasse_window(p);
  uint64_t span = hw.hi - hw.lo + 1;
  uint64_t m = isqrt(span) + 1;

  std::unordered_multimap<uint64_t, std::pair<uint32_t, uint64_t>> baby;
  baby.reserve(m * 2);
  Pt J;  // j*P
  for (uint32_t j = 0; j < m; ++j) {
    if (!J.inf) baby.emplace(J.x, std::make_pair(j, J.y));
    J = ec_add(J, P, A, p);
  }

  std::vector<uint64_t> hits;
  Pt R = ec_mul(hw.lo, P, A, p);
  Pt G = ec_mul(m, P, A, p);
  for (uint64_t base = hw.lo; base <= hw.hi + m; base += m) {
    if (R.inf && base >= hw.lo && base <= hw.hi) hits.push_back(base);
    if (!R.inf) {
      auto [it, end] = baby.equal_range(R.x);
      for (; it != end; ++it) {
        uint64_t j = it->second.first, yj = it->second.second;
        if (R.y == yj && base >= hw.lo + j && base - j <= hw.hi) hits.push_back(base - j);
        if (addmod(R.y, yj, p) == 0 && base + j >= hw.lo && base + j <= hw.hi)
          hits.push_back(base + j);
      }
    }
    R = ec_add(R, G, A, p);
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  std::vector<uint64_t> verified;
  for (uint64_t s : hits)
    if (ec_mul(s, P, A, p).inf) verified.push_back(s);
  return verified;
}

uint64_t point_order(const Pt& P, uint64_t A, uint64_t p) {
  auto kills = window_kills(P, A, p);
  uint64_t g = 0;
  for (uint64_t s : kills) g = std::gcd(g, s);
  if (g == 0) return 1;
  // reduce g to the exact order of P
  uint64_t fac[64];
  int nfac = 0;
  prime_factors(g, fac, &nfac);
  uint64_t o = g;
  for (int i = 0; i < nfac; ++i)
    while (o % fac[i] == 0 && ec_mul(o / fac[i], P, A, p).inf) o /= fac[i];
  return o;
}

// Deterministic point stream: x = 1,2,3,... with y^2 = x^3 + Ax + B solvable.
struct PointStream {
  uint64_t A, B, p, x = 0;
  Pt next() {
    for (;;) {
      ++x;
      uint64_t z = addmod(mulmod(addmod(mulmod(x, x, p), A, p), x, p), B, p);
      if (z == 0) return {x, 0, false};
      if (legendre(z, p) == 1) return {x, sqrtmod(z, p), false};
    }
  }
};

// lcm of point orders from the first `npoints` points of the stream.
uint64_t order_lcm(uint64_t A, uint64_t B, uint64_t p, int npoints,
                   const HasseWindow& hw, bool* resolved, uint64_t* order_out) {
  PointStream ps{A, B, p};
  uint64_t L = 1;
  for (int i = 0; i < npoints; ++i) {
    Pt P = ps.next();
    uint64_t o = point_order(P, A, p);
    L = std::lcm(L, o);
    uint64_t k1 = (hw.lo + L - 1) / L, k2 = hw.hi / L;
    if (k1 == k2) {
      if (resolved) *resolved = true;
      if (order_out) *order_out = k1 * L;
      return L;
    }
  }
  if (resolved) *resolved = false;
  return L;
}

bool count_bsgs(const ReducedCurve& rc, uint64_t* n_out) {
  uint64_t p = rc.p;
  uint64_t a1 = rc.a[0], a2 = rc.a[1], a3 = rc.a[2], a4 = rc.a[3], a6 = rc.a[4];
  // short form y^2 = x^3 + Ax + B via c-invariants (valid for p >= 5)
  uint64_t b2 = addmod(mulmod(a1, a1, p), mulmod(4 % p, a2, p), p);
  uint64_t b4 = addmod(mulmod(2 % p, a4, p), mulmod(a1, a3, p), p);
  uint64_t b6 = addmod(mulmod(a3, a3, p), mulmod(4 % p, a6, p), p);
  uint64_t c4 = submod(mulmod(b2, b2, p), mulmod(24 % p, b4, p), p);
  uint64_t c6 = submod(mulmod(36 % p, mulmod(b2, b4, p), p),
                       addmod(mulmod(mulmod(b2, b2, p), b2, p), mulmod(216 % p, b6, p), p), p);
  uint64_t A = submod(0, mulmod(27 % p, c4, p), p);
  uint64_t B = submod(0, mulmod(54 % p, c6, p), p);

  HasseWindow hw = hasse_window(p);
  bool resolved = false;
  uint64_t order = 0;
  uint64_t L = order_lcm(A, B, p, 16, hw, &resolved, &order);
  if (resolved) {
    *n_out = order;
    return true;
  }

  // quadratic-twist disambiguation: N + N_tw = 2p + 2
  uint64_t d = 2;
  while (legendre(d, p) != -1) ++d;
  uint64_t Atw = mulmod(A, mulmod(d, d, p), p);
  uint64_t Btw = mulmod(B, mulmod(mulmod(d, d, p), d, p), p);
  bool tw_resolved = false;
  uint64_t tw_order = 0;
  uint64_t Ltw = order_lcm(Atw, Btw, p, 16, hw, &tw_resolved, &tw_order);
  if (tw_resolved) {
    *n_out = 2 * p + 2 - tw_order;
    return true;
  }
  std::vector<uint64_t> cands;
  for (uint64_t k = (hw.lo + L - 1) / L; k * L <= hw.hi; ++k) {
    uint64_t n = k * L;
    if ((2 * p + 2 - n) % Ltw == 0) cands.push_back(n);
  }
  if (cands.size() == 1) {
    *n_out = cands[0];
    return true;
  }
  return false;  // caller falls back to naive
}

}  // namespace

PointCount count_points(const ReducedCurve& rc, Strategy strategy, uint64_t naive_cutoff) {
  if (!rc.good)
    throw bad_reduction_error("count_points: bad reduction at p=" + std::to_string(rc.p));
  uint64_t p = rc.p;
  bool use_naive = (p < 5) || strategy == Strategy::Naive ||
                   (strategy == Strategy::Auto && p <= naive_cutoff);
  uint64_t n = 0;
  if (!use_naive) {
    if (!count_bsgs(rc, &n)) n = count_naive(rc);
  } else {
    n = count_naive(rc);
  }
  PointCount pc;
  pc.p = p;
  pc.n_points = n;
  pc.a_trace = static_cast<int64_t>(p) + 1 - static_cast<int64_t>(n);
  return pc;
}

}  // namespace hrz::ec
