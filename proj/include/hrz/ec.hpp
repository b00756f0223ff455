#ifndef HRZ_EC_HPP
#define HRZ_EC_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hrz::ec {

struct singular_model_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct bad_reduction_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// over Q, assumed minimal (LMFDB convention; no minimal-model reduction here).
struct CurveQ {
  mpz_class a1, a2, a3, a4, a6;
  std::optional<std::string> label;
  std::optional<mpz_class> conductor;
  std::optional<int> rank;
  std::optional<bool> cm;
};

// Minimal discriminant of the supplied model; zero means singular.
mpz_class discriminant(const CurveQ& e);

// c4^3 / Delta. Throws singular_model_error when Delta = 0.
mpq_class j_invariant(const CurveQ& e);

// True iff j is one of the 13 rational CM j-invariants, unless e.cm overrides.
bool is_cm(const CurveQ& e);

// Reduction mod p.  The full Weierstrass form is retained so p in {2,3} work.
struct ReducedCurve {
  uint64_t p = 0;
  std::array<uint64_t, 5> a{};  // a1,a2,a3,a4,a6 mod p, in [0,p)
  bool good = false;
};

// good = p does not divide the conductor when present, else the discriminant.
ReducedCurve reduce(const CurveQ& e, uint64_t p);

enum class Strategy { Auto, Naive, Bsgs };

struct PointCount {
  uint64_t p = 0;
  uint64_t n_points = 0;  // #E(F_p) including the point at infinity
  int64_t a_trace = 0;    // p + 1 - n_points
};

// Exact #E(F_p).  Auto uses naive enumeration up to naive_cutoff, BSGS above.
// Deterministic: identical input yields identical output regardless of path.
// Throws bad_reduction_error when rc.good is false.
PointCount count_points(const ReducedCurve& rc, Strategy strategy = Strategy::Auto,
                        uint64_t naive_cutoff = 1 << 14);

}  // namespace hrz::ec

#endif
