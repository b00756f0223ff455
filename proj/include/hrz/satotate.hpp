#ifndef HRZ_SATOTATE_HPP
#define HRZ_SATOTATE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrz/ec.hpp"

namespace hrz::st {

struct cm_rejection_error : std::domain_error {
  using std::domain_error::domain_error;
};

// One prime's contribution: the big-Delta invariant (cos(theta_1) for n=1)
// and the angle recovered from it after clamping into [-1, 1].
struct STSample {
  uint64_t p = 0;
  double delta = 0.0;
  double theta_tilde = 0.0;  // arccos(clamp(delta)) in [0, pi]
  bool clamped = false;
};

// Sato-Tate CDF F(theta) = (theta - sin(theta) cos(theta)) / pi on [0, pi].
double st_cdf(double theta);

enum class ClampPolicy {
  Include,  // clamped samples land at theta = 0 or pi and stay in
  Exclude,  // drop samples whose delta fell outside [-1, 1]
};

STSample sample_from_ap(uint64_t p, int64_t ap, int n);

struct SampleOptions {
  bool allow_cm = false;
  unsigned threads = 1;
  uint64_t naive_cutoff = 1 << 14;
};

// One sample per good prime <= N.  Rejects CM curves unless allow_cm.
std::vector<STSample> delta_samples(const ec::CurveQ& curve, int n, uint64_t N,
                                    const SampleOptions& opts = {});

// Sup distance between the ECDF of theta_tilde and st_cdf.
double ks_statistic(std::span<const STSample> samples,
                    ClampPolicy policy = ClampPolicy::Include);

struct Histogram {
  std::vector<double> edges;     // bins+1 equal-width edges over [0, pi]
  std::vector<uint64_t> counts;  // half-open [a,b) bins, last bin closed
};

Histogram histogram(std::span<const STSample> samples, int bins,
                    ClampPolicy policy = ClampPolicy::Include);

struct STReport {
  int n = 0;
  uint64_t limit = 0;  // N
  std::size_t sample_count = 0;
  std::size_t clamp_count = 0;
  Histogram hist;
  double ks = 0.0;
};

STReport make_report(std::span<const STSample> samples, int n, uint64_t limit, int bins,
                     ClampPolicy policy = ClampPolicy::Include);

void emit_json(const STReport& r, const std::string& path);
void emit_csv(std::span<const STSample> samples, const std::string& path);
// Histogram with the 2/pi sin^2 density overlay scaled to the sample count.
void emit_svg(const STReport& r, const std::string& path);

}  // namespace hrz::st

#endif
