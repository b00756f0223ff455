#ifndef HRZ_MURMURATION_HPP
#define HRZ_MURMURATION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hrz/family.hpp"

namespace hrz::murmur {

enum class BadPrimePolicy {
  Skip,    // drop curves with bad reduction at p_i from the average
  Formal,  // feed the ingested bad-prime a_p into the recursion formally
};

struct SeriesPoint {
  std::size_t i = 0;   // prime index, 1-based (p_1 = 2)
  uint64_t p = 0;      // the i-th prime
  double value = 0.0;  // f_{r,n}(i)
  std::size_t family_size_used = 0;
};

struct MurmurationSeries {
  int n = 1;
  family::FamilyFilter filter;
  BadPrimePolicy policy = BadPrimePolicy::Skip;
  std::vector<SeriesPoint> points;
};

// The rank-n average over the family at each of the first i_max primes:
//   n=1: mean a_p; n=2: mean (a_2 + p - 1); n>=3: mean (a_n+(n-1)p+n-5)/(n-1).
// Per-curve values are exact rationals, converted to float only for the
// average, which is a compensated sum over labels in sorted order.
MurmurationSeries f_series(const std::vector<family::CurveRecord>& fam, int n,
                           std::size_t i_max, BadPrimePolicy policy,
                           family::ApCache* cache = nullptr, unsigned threads = 1,
                           uint64_t naive_cutoff = 1 << 14);

struct SeriesDiff {
  std::vector<double> abs_diff;  // per shared i
  double max_abs = 0.0;
  double mean_abs = 0.0;
};

// Throws std::invalid_argument when the i-grids disagree.
SeriesDiff compare_series(const MurmurationSeries& s1, const MurmurationSeries& s2);

// csv columns: i,p,value,count
void emit_csv(const MurmurationSeries& s, const std::string& path);
MurmurationSeries parse_csv(const std::string& path);
void emit_json(const MurmurationSeries& s, const std::string& path);
void emit_svg(const MurmurationSeries& s, const std::string& path, bool x_is_prime = false);

struct FitResult {
  double amp = 0.0;    // A
  double alpha = 0.0;  // x exponent
  double freq = 0.0;   // B
  double beta = 0.0;   // phase exponent
  double residual_rms = 0.0;
  bool converged = false;
};

// Least squares for y = A x^alpha sin(B x^beta): coarse deterministic grid
// over (alpha, B, beta) with A closed-form, then damped Gauss-Newton on all
// four parameters.  Needs >= 8 points.
FitResult fit_murmuration(std::span<const double> x, std::span<const double> y);
FitResult fit_series(const MurmurationSeries& s, bool x_is_prime = false);

}  // namespace hrz::murmur

#endif
