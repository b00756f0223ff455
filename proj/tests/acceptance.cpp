// Acceptance gate: one pass/fail line per criterion, exit code = #failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <iostream>
#include <random>
#include <thread>
#include <vector>

#include "hrz/ec.hpp"
#include "hrz/family.hpp"
#include "hrz/modarith.hpp"
#include "hrz/murmuration.hpp"
#include "hrz/parallel.hpp"
#include "hrz/primes.hpp"
#include "hrz/satotate.hpp"
#include "hrz/zeta.hpp"

using namespace hrz;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, clock_type::time_point t0) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock_type::now() - t0);
  std::cout << "criterion " << idx << " (" << name << "): " << (ok ? "PASS" : "FAIL")
            << "  [" << ms.count() << " ms]" << std::endl;
  if (!ok) ++g_failures;
}

ec::CurveQ curve37a() {
  ec::CurveQ e;
  e.a3 = 1;
  e.a4 = -1;
  e.label = "37a1";
  e.conductor = 37;
  e.rank = 1;
  return e;
}

unsigned worker_threads() {
  if (const char* t = std::getenv("MURMUR_THREADS")) return std::max(1, std::atoi(t));
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

// a_p of 37a at every good prime in ps (parallel; ps must avoid 37)
std::vector<int64_t> traces_37a(const std::vector<uint64_t>& ps, unsigned threads) {
  auto curve = curve37a();
  std::vector<int64_t> ap(ps.size());
  parallel_for(ps.size(), threads, [&](std::size_t k) {
    ap[k] = ec::count_points(ec::reduce(curve, ps[k])).a_trace;
  });
  return ap;
}

bool crit1() {
  zeta::BetaSequence b3(3, 0, 3);
  if (b3.beta(1) != 2 || b3.beta(2) != 3 || b3.beta(3) != mpq_class(48, 13)) return false;
  if (zeta::a_rank_n(b3, 2) != -2 || zeta::a_rank_n(b3, 3) != -4) return false;
  zeta::BetaSequence b5(5, -2, 2);
  return b5.beta(2) == mpq_class(8, 3) && zeta::a_rank_n(b5, 2) == -6;
}

bool crit2(const std::vector<uint64_t>& primes1e6) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    uint64_t q = primes1e6[rng() % primes1e6.size()];
    auto bound = static_cast<int64_t>(2.0 * std::sqrt(static_cast<double>(q)));
    while (static_cast<uint64_t>(bound) * bound > 4 * q) --bound;
    int64_t a1 = -bound + static_cast<int64_t>(rng() % (2 * bound + 1));
    zeta::BetaSequence bs(q, a1, 2);
    mpq_class expect = mpq_class(1 + a1) - mpq_class(static_cast<long>(q));
    if (zeta::a_rank_n(bs, 2) != expect) return false;
  }
  return true;
}

bool crit3(const std::vector<uint64_t>& good500, const std::vector<int64_t>& ap500) {
  for (std::size_t k = 0; k < good500.size(); ++k) {
    zeta::BetaSequence bs(good500[k], ap500[k], 12);
    for (int n = 1; n <= 12; ++n)
      if (!zeta::rh_check(zeta::zeta_polynomial(bs, n))) return false;
  }
  return true;
}

bool crit4(const std::vector<uint64_t>& good500, const std::vector<int64_t>& ap500) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> re(0.12, 0.88), im(-3.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t k = rng() % good500.size();
    int n = 1 + static_cast<int>(rng() % 12);
    zeta::BetaSequence bs(good500[k], ap500[k], n);
    std::complex<double> s{re(rng), im(rng)};
    worst = std::max(worst, zeta::functional_equation_check(bs, n, std::span(&s, 1)));
  }
  return worst <= 1e-9;
}

bool crit5(const std::vector<uint64_t>& primes1e6, const std::vector<int64_t>& ap1e6) {
  for (std::size_t k = 0; k < primes1e6.size() && primes1e6[k] <= 10000; ++k) {
    uint64_t p = primes1e6[k];
    zeta::BetaSequence bs(p, ap1e6[k], 2);
    auto ri = zeta::zeta_polynomial(bs, 2);
    auto ad = zeta::delta_n(ri, zeta::theta_n(ri));
    double expect = static_cast<double>(ap1e6[k]) / (2.0 * std::sqrt(static_cast<double>(p)));
    if (std::abs(ad.delta - expect) > 1e-10) return false;
  }
  return true;
}

bool crit6(const std::vector<uint64_t>& primes1e6, const std::vector<int64_t>& ap1e6) {
  std::vector<std::size_t> idx;  // indices of primes in [1e3, 1e5]
  for (std::size_t k = 0; k < primes1e6.size(); ++k)
    if (primes1e6[k] >= 1000 && primes1e6[k] <= 100000) idx.push_back(k);
  std::vector<std::size_t> sample;  // 200 evenly spaced
  for (std::size_t j = 0; j < 200; ++j) sample.push_back(idx[j * idx.size() / 200]);

  // decade maxima of the raw residual, decades [1e3,1e4) and [1e4,1e5]
  double dec_max[6][2] = {};
  for (std::size_t k : sample) {
    uint64_t p = primes1e6[k];
    int64_t ap = ap1e6[k];
    zeta::BetaSequence bs(p, ap, 8);
    int dec = p < 10000 ? 0 : 1;
    for (int n = 3; n <= 8; ++n) {
      double resid = std::abs(
          mpq_class(zeta::a_rank_n(bs, n) - zeta::asymptotic_main_term(p, ap, n)).get_d());
      if (resid * std::sqrt(static_cast<double>(p)) > 10.0 * n) return false;
      dec_max[n - 3][dec] = std::max(dec_max[n - 3][dec], resid);
    }
  }
  for (int n = 3; n <= 8; ++n)
    if (!(dec_max[n - 3][1] < dec_max[n - 3][0])) return false;

  zeta::BetaSequence spot(101, 10, 3);
  double resid = std::abs(
      mpq_class(zeta::a_rank_n(spot, 3) - zeta::asymptotic_main_term(101, 10, 3)).get_d());
  return std::abs(resid - 0.284) < 0.005 && std::abs(resid * std::sqrt(101.0) - 2.86) < 0.05;
}

bool crit7(const std::vector<uint64_t>& primes1e6, unsigned threads) {
  std::vector<uint64_t> window;  // primes in [1e4, 1e5]
  for (uint64_t p : primes1e6)
    if (p >= 10000 && p <= 100000) window.push_back(p);
  std::mt19937_64 rng(7);
  std::vector<ec::ReducedCurve> rcs;
  while (rcs.size() < 1000) {
    uint64_t p = window[rng() % window.size()];
    uint64_t a = rng() % p, b = rng() % p;
    using mod::addmod, mod::mulmod;
    // 4a^3 + 27b^2 != 0 mod p
    uint64_t disc = addmod(mulmod(4 % p, mulmod(a, mulmod(a, a, p), p), p),
                           mulmod(27 % p, mulmod(b, b, p), p), p);
    if (disc == 0) continue;
    ec::ReducedCurve rc;
    rc.p = p;
    rc.a = {0, 0, 0, a, b};
    rc.good = true;
    rcs.push_back(rc);
  }
  std::vector<char> ok(rcs.size(), 0);
  parallel_for(rcs.size(), threads, [&](std::size_t k) {
    auto naive = ec::count_points(rcs[k], ec::Strategy::Naive);
    auto bsgs = ec::count_points(rcs[k], ec::Strategy::Bsgs);
    ok[k] = naive.n_points == bsgs.n_points;
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

bool crit8(unsigned threads) {
  std::string fixture = std::string(HRZ_TEST_DATA_DIR) + "/family_fixture.csv";
  family::FamilyFilter filter;
  filter.rank = 0;
  filter.n1 = 1;
  filter.n2 = 1000;
  auto fam = family::load_family(fixture, filter, true);
  if (fam.empty()) return false;
  auto policy = murmur::BadPrimePolicy::Skip;
  auto s1 = murmur::f_series(fam, 1, 100, policy, nullptr, threads);
  auto s2 = murmur::f_series(fam, 2, 100, policy, nullptr, threads);
  auto s5 = murmur::f_series(fam, 5, 100, policy, nullptr, threads);
  if (murmur::compare_series(s1, s2).max_abs > 1e-10) return false;
  auto d15 = murmur::compare_series(s1, s5);
  for (std::size_t k = 0; k < s1.points.size(); ++k) {
    uint64_t p = s1.points[k].p;
    if (p >= 97 && d15.abs_diff[k] > 50.0 / std::sqrt(static_cast<double>(p))) return false;
  }
  // optional ingestion check against a full LMFDB export, when one is supplied
  if (const char* path = std::getenv("HRZ_LMFDB_EXPORT")) {
    const std::size_t expect[4] = {4238, 5194, 8536, 1380};
    for (int r = 0; r < 4; ++r) {
      family::FamilyFilter f;
      f.rank = r;
      f.n1 = 7500;
      f.n2 = 10000;
      if (family::load_family(path, f, true).size() != expect[r]) return false;
    }
  }
  return true;
}

struct STScan {
  double ks1e4 = 0.0, ks1e6 = 0.0;
  double clamp1e4 = 0.0, clamp1e5 = 0.0, clamp1e6 = 0.0;
};

STScan st_scan(const std::vector<uint64_t>& primes1e6, const std::vector<int64_t>& ap1e6,
               int n) {
  std::vector<st::STSample> samples(primes1e6.size());
  for (std::size_t k = 0; k < primes1e6.size(); ++k)
    samples[k] = st::sample_from_ap(primes1e6[k], ap1e6[k], n);
  STScan scan;
  std::size_t n1e4 = 0, n1e5 = 0, clamped = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (samples[k].clamped) ++clamped;
    if (primes1e6[k] <= 10000) {
      n1e4 = k + 1;
      scan.clamp1e4 = static_cast<double>(clamped) / (k + 1);
    }
    if (primes1e6[k] <= 100000) {
      n1e5 = k + 1;
      scan.clamp1e5 = static_cast<double>(clamped) / (k + 1);
    }
  }
  scan.clamp1e6 = static_cast<double>(clamped) / samples.size();
  scan.ks1e4 = st::ks_statistic(std::span(samples.data(), n1e4));
  scan.ks1e6 = st::ks_statistic(samples);
  (void)n1e5;
  return scan;
}

bool crit11() {
  std::vector<double> x(400), y(400);
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = 1.0 + 2.5 * static_cast<double>(k);
    y[k] = 2.0 * std::pow(x[k], 0.5) * std::sin(0.1 * std::pow(x[k], 0.8));
  }
  auto r = murmur::fit_murmuration(x, y);
  return r.converged && std::abs(r.amp / 2.0 - 1.0) < 1e-3 &&
         std::abs(r.alpha / 0.5 - 1.0) < 1e-3 && std::abs(r.freq / 0.1 - 1.0) < 1e-3 &&
         std::abs(r.beta / 0.8 - 1.0) < 1e-3;
}

}  // namespace

int main() {
  unsigned threads = worker_threads();
  auto curve = curve37a();

  auto t0 = clock_type::now();
  report(1, "exact recursion fixtures", crit1(), t0);

  auto all_primes = primes::primes_up_to(1000000);
  std::vector<uint64_t> good;  // good primes of 37a up to 1e6
  for (uint64_t p : all_primes)
    if (p != 37) good.push_back(p);

  t0 = clock_type::now();
  report(2, "n=2 closed form, 1000 random (q, a1)", crit2(all_primes), t0);

  std::vector<uint64_t> good500;
  for (uint64_t p : good)
    if (p <= 500) good500.push_back(p);
  auto ap500 = traces_37a(good500, threads);

  t0 = clock_type::now();
  report(3, "rank-n RH through n=12, 37a, p<=500", crit3(good500, ap500), t0);

  t0 = clock_type::now();
  report(4, "functional equation, 100 random s", crit4(good500, ap500), t0);

  std::cout << "computing a_p(37a) for " << good.size() << " primes <= 1e6 on " << threads
            << (threads == 1 ? " thread..." : " threads...") << std::endl;
  t0 = clock_type::now();
  auto ap = traces_37a(good, threads);
  {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock_type::now() - t0);
    std::cout << "  done in " << ms.count() << " ms" << std::endl;
  }

  t0 = clock_type::now();
  report(5, "Delta_2 identity, 37a, p<=1e4", crit5(good, ap), t0);

  t0 = clock_type::now();
  report(6, "main-term residual decay, n in 3..8", crit6(good, ap), t0);

  t0 = clock_type::now();
  report(7, "naive vs BSGS on 1000 random curves", crit7(all_primes, threads), t0);

  t0 = clock_type::now();
  report(8, "murmuration identities (n=2, n=5)", crit8(threads), t0);

  t0 = clock_type::now();
  bool st_ok = true, clamp_ok = true;
  STScan scans[3];
  int ns[3] = {1, 3, 5};
  for (int j = 0; j < 3; ++j) {
    scans[j] = st_scan(good, ap, ns[j]);
    std::cout << "  n=" << ns[j] << ": ks(1e4)=" << scans[j].ks1e4
              << " ks(1e6)=" << scans[j].ks1e6 << " clamp(1e6)=" << scans[j].clamp1e6
              << std::endl;
    if (!(scans[j].ks1e6 <= 0.05 && scans[j].ks1e6 < scans[j].ks1e4)) st_ok = false;
  }
  report(9, "rank-n Sato-Tate KS, 37a, p<=1e6", st_ok, t0);

  t0 = clock_type::now();
  for (int j = 1; j < 3; ++j) {  // n = 3, 5
    const auto& s = scans[j];
    // trend is non-increasing across decades; strictness only means anything
    // when clamping occurs at all
    bool trend = s.clamp1e4 == 0.0 ? (s.clamp1e6 == 0.0)
                                   : (s.clamp1e6 < s.clamp1e5 || s.clamp1e5 < s.clamp1e4) &&
                                         s.clamp1e6 <= s.clamp1e5 && s.clamp1e5 <= s.clamp1e4;
    if (!(s.clamp1e6 <= 0.05 && trend)) clamp_ok = false;
  }
  report(10, "clamp rate <= 5% and decreasing", clamp_ok, t0);

  t0 = clock_type::now();
  report(11, "synthetic oscillatory fit round-trip", crit11(), t0);

  (void)curve;
  std::cout << (g_failures == 0 ? "all criteria passed" : "FAILURES PRESENT") << std::endl;
  return g_failures;
}
