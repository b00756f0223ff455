#include "hrz/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hrz::zeta {

BetaSequence::BetaSequence(mpz_class q, mpz_class a1, int n_max)
    : q_(std::move(q)), a1_(std::move(a1)) {
  if (q_ < 2) throw std::invalid_argument("BetaSequence: q must be >= 2");
  if (n_max < 0) throw std::invalid_argument("BetaSequence: n_max must be >= 0");
  betas_.reserve(n_max + 2);
  betas_.emplace_back(0);  // beta_{-1}
  betas_.emplace_back(1);  // beta_0
  mpz_class qn = 1;        // q^{n-1}
  for (int n = 1; n <= n_max; ++n) {
    mpz_class qn1 = qn;  // q^{n-1}
    qn *= q_;            // q^n
    mpq_class b = (mpq_class(qn + qn1 - a1_) * betas_[n] - mpq_class(qn1 - q_) * betas_[n - 1]) /
                  mpq_class(qn - 1);
    b.canonicalize();
    if (b <= 0) {
      std::ostringstream os;
      os << "BetaSequence: beta_" << n << " <= 0 for q=" << q_ << ", a1=" << a1_
         << " (a1 violates the Hasse bound?)";
      throw std::runtime_error(os.str());
    }
    betas_.push_back(std::move(b));
  }
}

const mpq_class& BetaSequence::beta(int n) const {
  if (n < -1 || n > n_max()) throw std::out_of_range("BetaSequence::beta: index out of range");
  return betas_[n + 1];
}

mpq_class a_rank_n(const BetaSequence& bs, int n) {
  if (n < 1 || n > bs.n_max()) throw std::out_of_range("a_rank_n: n out of range");
  mpz_class big_q;
  mpz_pow_ui(big_q.get_mpz_t(), bs.q().get_mpz_t(), n);
  mpq_class a = mpq_class(big_q + 1) - mpq_class(big_q - 1) * bs.beta(n) / bs.beta(n - 1);
  a.canonicalize();
  return a;
}

mpq_class counting_miracle_alpha(const BetaSequence& bs, int n) {
  if (n < 1 || n - 1 > bs.n_max())
    throw std::out_of_range("counting_miracle_alpha: n out of range");
  return bs.beta(n - 1);
}

RankInvariants zeta_polynomial(const BetaSequence& bs, int n) {
  if (n < 1 || n > bs.n_max()) throw std::out_of_range("zeta_polynomial: n out of range");
  RankInvariants ri;
  ri.n = n;
  mpz_pow_ui(ri.big_q.get_mpz_t(), bs.q().get_mpz_t(), n);
  ri.a_n = a_rank_n(bs, n);
  ri.alpha_n = bs.beta(n - 1);
  ri.p_coeffs[0] = ri.alpha_n;
  ri.p_coeffs[1] = -ri.alpha_n * ri.a_n;
  ri.p_coeffs[1].canonicalize();
  ri.p_coeffs[2] = ri.alpha_n * mpq_class(ri.big_q);
  ri.p_coeffs[2].canonicalize();
  return ri;
}

std::complex<double> zeta_eval(const BetaSequence& bs, int n, std::complex<double> t) {
  if (n < 1 || n > bs.n_max()) throw std::out_of_range("zeta_eval: n out of range");
  mpz_class big_q;
  mpz_pow_ui(big_q.get_mpz_t(), bs.q().get_mpz_t(), n);
  double qd = big_q.get_d();
  if (std::abs(t - 1.0) < 1e-12 || std::abs(qd * t - 1.0) < 1e-12)
    throw pole_error("zeta_eval: T at a pole");
  std::complex<double> num = (qd - 1.0) * t;
  std::complex<double> den = (1.0 - t) * (1.0 - qd * t);
  return bs.beta(n - 1).get_d() + bs.beta(n).get_d() * num / den;
}

std::complex<double> zeta_eval_s(const BetaSequence& bs, int n, std::complex<double> s) {
  mpz_class big_q;
  mpz_pow_ui(big_q.get_mpz_t(), bs.q().get_mpz_t(), n);
  double logq = std::log(big_q.get_d());
  std::complex<double> t = std::exp(-s * logq);
  return zeta_eval(bs, n, t);
}

bool rh_check(const RankInvariants& ri) {
  mpq_class lhs = ri.a_n * ri.a_n;
  lhs.canonicalize();
  return lhs <= mpq_class(4 * ri.big_q);
}

double functional_equation_check(const BetaSequence& bs, int n,
                                 std::span<const std::complex<double>> samples) {
  double worst = 0.0;
  for (const auto& s : samples) {
    auto z1 = zeta_eval_s(bs, n, s);
    auto z2 = zeta_eval_s(bs, n, 1.0 - s);
    double dev = std::abs(z1 - z2) / std::max(1.0, std::abs(z1));
    worst = std::max(worst, dev);
  }
  return worst;
}

namespace {

// a_n / (2 sqrt(Q)) as a double; exact rational divided at the last moment
double cos_argument(const RankInvariants& ri) {
  double qd = ri.big_q.get_d();
  return ri.a_n.get_d() / (2.0 * std::sqrt(qd));
}

}  // namespace

AngleData theta_n(const RankInvariants& ri) {
  AngleData ad;
  double x = cos_argument(ri);
  if (x > 1.0 || x < -1.0) {
    ad.clamped = true;
    x = std::clamp(x, -1.0, 1.0);
  }
  ad.theta = std::acos(x);
  return ad;
}

AngleData delta_n(const RankInvariants& ri, AngleData ad) {
  if (ri.n < 2) throw std::domain_error("delta_n: undefined for n=1 (use theta directly)");
  double q = ri.big_q.get_d();
  // recover the base q from Q = q^n exactly
  mpz_class base_q;
  mpz_root(base_q.get_mpz_t(), ri.big_q.get_mpz_t(), ri.n);
  double sq = std::sqrt(base_q.get_d());
  double x = cos_argument(ri);
  if (ri.n == 2) {
    ad.delta = sq * x + 0.5 * (sq - 1.0 / sq);
  } else {
    // pi/2 - theta computed as asin to keep precision near theta = pi/2
    double xs = std::clamp(x, -1.0, 1.0);
    double scale = std::sqrt(q / base_q.get_d()) / (ri.n - 1);
    ad.delta = scale * std::asin(xs) +
               0.5 * (sq + static_cast<double>(ri.n - 5) / ((ri.n - 1) * sq));
  }
  return ad;
}

mpq_class asymptotic_main_term(const mpz_class& q, const mpz_class& a1, int n) {
  if (n < 1) throw std::invalid_argument("asymptotic_main_term: n must be >= 1");
  if (n == 1) return mpq_class(a1);
  if (n == 2) return mpq_class(1 + a1 - q);
  return mpq_class((5 - n) + (n - 1) * a1 - (n - 1) * q);
}

}  // namespace hrz::zeta
