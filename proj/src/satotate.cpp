#include "hrz/satotate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>

#include <json.hpp>

#include "hrz/parallel.hpp"
#include "hrz/primes.hpp"
#include "hrz/svg.hpp"
#include "hrz/zeta.hpp"

namespace hrz::st {

using std::numbers::pi;

double st_cdf(double theta) {
  if (theta < 0.0 || theta > pi) throw std::domain_error("st_cdf: theta outside [0, pi]");
  return (theta - std::sin(theta) * std::cos(theta)) / pi;
}

STSample sample_from_ap(uint64_t p, int64_t ap, int n) {
  STSample s;
  s.p = p;
  if (n == 1) {
    s.delta = static_cast<double>(ap) / (2.0 * std::sqrt(static_cast<double>(p)));
  } else {
    zeta::BetaSequence bs(mpz_class(static_cast<unsigned long>(p)),
                          mpz_class(static_cast<long>(ap)), n);
    auto ri = zeta::zeta_polynomial(bs, n);
    auto ad = zeta::delta_n(ri, zeta::theta_n(ri));
    s.delta = ad.delta;
  }
  double c = s.delta;
  if (c > 1.0 || c < -1.0) {
    s.clamped = true;
    c = std::clamp(c, -1.0, 1.0);
  }
  s.theta_tilde = std::acos(c);
  return s;
}

std::vector<STSample> delta_samples(const ec::CurveQ& curve, int n, uint64_t N,
                                    const SampleOptions& opts) {
  if (n < 1) throw std::invalid_argument("delta_samples: n must be >= 1");
  if (!opts.allow_cm && ec::is_cm(curve))
    throw cm_rejection_error("delta_samples: CM curve rejected (pass allow_cm to override)");
  auto ps = primes::primes_up_to(N);
  std::vector<STSample> out(ps.size());
  std::vector<uint8_t> keep(ps.size(), 0);
  parallel_for(ps.size(), opts.threads, [&](std::size_t i) {
    ec::ReducedCurve rc = ec::reduce(curve, ps[i]);
    if (!rc.good) return;  // bad primes skipped
    auto pc = ec::count_points(rc, ec::Strategy::Auto, opts.naive_cutoff);
    out[i] = sample_from_ap(ps[i], pc.a_trace, n);
    keep[i] = 1;
  });
  std::vector<STSample> kept;
  kept.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (keep[i]) kept.push_back(out[i]);
  return kept;
}

namespace {

std::vector<double> thetas_under(std::span<const STSample> samples, ClampPolicy policy) {
  std::vector<double> t;
  t.reserve(samples.size());
  for (const auto& s : samples)
    if (policy == ClampPolicy::Include || !s.clamped) t.push_back(s.theta_tilde);
  return t;
}

}  // namespace

double ks_statistic(std::span<const STSample> samples, ClampPolicy policy) {
  auto t = thetas_under(samples, policy);
  if (t.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::sort(t.begin(), t.end());
  double n = static_cast<double>(t.size());
  double d = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double f = st_cdf(t[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

Histogram histogram(std::span<const STSample> samples, int bins, ClampPolicy policy) {
  if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
  Histogram h;
  h.edges.resize(bins + 1);
  for (int k = 0; k <= bins; ++k) h.edges[k] = pi * static_cast<double>(k) / bins;
  h.counts.assign(bins, 0);
  for (const auto& s : samples) {
    if (policy == ClampPolicy::Exclude && s.clamped) continue;
    int k = static_cast<int>(s.theta_tilde / pi * bins);
    k = std::clamp(k, 0, bins - 1);
    ++h.counts[k];
  }
  return h;
}

STReport make_report(std::span<const STSample> samples, int n, uint64_t limit, int bins,
                     ClampPolicy policy) {
  STReport r;
  r.n = n;
  r.limit = limit;
  r.sample_count = samples.size();
  for (const auto& s : samples)
    if (s.clamped) ++r.clamp_count;
  r.hist = histogram(samples, bins, policy);
  r.ks = ks_statistic(samples, policy);
  return r;
}

void emit_json(const STReport& r, const std::string& path) {
  nlohmann::json j;
  j["n"] = r.n;
  j["N"] = r.limit;
  j["sample_count"] = r.sample_count;
  j["clamp_count"] = r.clamp_count;
  j["ks"] = r.ks;
  j["bins"] = r.hist.edges;
  j["counts"] = r.hist.counts;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_json: cannot open " + path);
  out << j.dump(1) << "\n";
}

void emit_csv(std::span<const STSample> samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << "p,delta,theta_tilde,clamped\n" << std::setprecision(12);
  for (const auto& s : samples)
    out << s.p << "," << s.delta << "," << s.theta_tilde << "," << (s.clamped ? 1 : 0)
        << "\n";
}

void emit_svg(const STReport& r, const std::string& path) {
  // overlay: expected count per bin position from the 2/pi sin^2 density
  std::size_t grid = 200;
  std::vector<double> ox(grid), oy(grid);
  double total = static_cast<double>(r.sample_count);
  double binw = r.hist.edges[1] - r.hist.edges[0];
  for (std::size_t i = 0; i < grid; ++i) {
    double t = pi * (static_cast<double>(i) + 0.5) / grid;
    ox[i] = t;
    oy[i] = total * binw * (2.0 / pi) * std::sin(t) * std::sin(t);
  }
  svg::histogram(path, r.hist.edges, r.hist.counts,
                 "rank " + std::to_string(r.n) + " angle distribution, N=" +
                     std::to_string(r.limit),
                 ox, oy);
}

}  // namespace hrz::st
