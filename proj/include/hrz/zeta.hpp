#ifndef HRZ_ZETA_HPP
#define HRZ_ZETA_HPP

#include <gmpxx.h>

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

// Rank-n zeta invariants of an elliptic curve over F_q, driven entirely by
// the exact two-step recursion on the beta invariants:
//   (q^n - 1) b_n = (q^n + q^{n-1} - a1) b_{n-1} - (q^{n-1} - q) b_{n-2},
// with b_{-1} = 0, b_0 = 1.  Everything up to the angle extraction is exact
// rational arithmetic; floats appear only in theta/Delta.

namespace hrz::zeta {

struct pole_error : std::domain_error {
  using std::domain_error::domain_error;
};

class BetaSequence {
 public:
  // Throws std::invalid_argument for q < 2, std::runtime_error if a beta
  // comes out non-positive (invalid a1 for this q).
  BetaSequence(mpz_class q, mpz_class a1, int n_max);

  const mpz_class& q() const { return q_; }
  const mpz_class& a1() const { return a1_; }
  int n_max() const { return static_cast<int>(betas_.size()) - 2; }

  // n in [-1, n_max]
  const mpq_class& beta(int n) const;

 private:
  mpz_class q_, a1_;
  std::vector<mpq_class> betas_;  // betas_[i] = beta_{i-1}
};

struct RankInvariants {
  int n = 1;
  mpz_class big_q;               // Q = q^n
  mpq_class a_n;                 // (Q+1) - (Q-1) * beta_n / beta_{n-1}
  mpq_class alpha_n;             // = beta_{n-1} (counting miracle)
  std::array<mpq_class, 3> p_coeffs;  // beta_{n-1} * (1, -a_n, Q)
};

struct AngleData {
  double theta = 0.0;  // in [0, pi]
  double delta = 0.0;
  bool clamped = false;  // arccos argument needed clamping to [-1, 1]
};

mpq_class a_rank_n(const BetaSequence& bs, int n);

// alpha_n(0) = beta_{n-1}
mpq_class counting_miracle_alpha(const BetaSequence& bs, int n);

RankInvariants zeta_polynomial(const BetaSequence& bs, int n);

// zeta_{E,n} at T = Q^{-s}.  Throws pole_error at T in {1, 1/Q}.
std::complex<double> zeta_eval(const BetaSequence& bs, int n, std::complex<double> t);

// Same, parameterized by s.
std::complex<double> zeta_eval_s(const BetaSequence& bs, int n, std::complex<double> s);

// Exact check a_n^2 <= 4Q, equivalent to all zeros on |T| = Q^{-1/2}.
bool rh_check(const RankInvariants& ri);

// max relative deviation |zeta(1-s) - zeta(s)| over the samples.
double functional_equation_check(const BetaSequence& bs, int n,
                                 std::span<const std::complex<double>> samples);

// theta_n = arccos(a_n / (2 sqrt(Q))), clamped into [-1,1] when RH fails.
AngleData theta_n(const RankInvariants& ri);

// Fills in the big-Delta invariant; requires n >= 2 (throws otherwise).
AngleData delta_n(const RankInvariants& ri, AngleData ad);

// Main term of a_n: a1 (n=1), 1+a1-q (n=2), (5-n)+(n-1)a1-(n-1)q (n>=3).
mpq_class asymptotic_main_term(const mpz_class& q, const mpz_class& a1, int n);

}  // namespace hrz::zeta

#endif
