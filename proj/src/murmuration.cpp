#include "hrz/murmuration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "hrz/parallel.hpp"
#include "hrz/primes.hpp"
#include "hrz/svg.hpp"
#include "hrz/zeta.hpp"

namespace hrz::murmur {

namespace {

// exact f-contribution of a single curve at prime p
mpq_class curve_term(int64_t ap, uint64_t p, int n) {
  mpz_class pz(static_cast<unsigned long>(p));
  if (n == 1) return mpq_class(ap);
  zeta::BetaSequence bs(pz, mpz_class(static_cast<long>(ap)), n);
  mpq_class an = zeta::a_rank_n(bs, n);
  if (n == 2) {
    mpq_class v = an + mpq_class(pz - 1);
    v.canonicalize();
    return v;
  }
  mpq_class v = (an + mpq_class((n - 1) * pz + (n - 5))) / mpq_class(n - 1);
  v.canonicalize();
  return v;
}

}  // namespace

MurmurationSeries f_series(const std::vector<family::CurveRecord>& fam, int n,
                           std::size_t i_max, BadPrimePolicy policy,
                           family::ApCache* cache, unsigned threads,
                           uint64_t naive_cutoff) {
  if (fam.empty()) throw std::invalid_argument("f_series: empty family");
  if (n < 1) throw std::invalid_argument("f_series: n must be >= 1");
  if (i_max == 0) throw std::invalid_argument("f_series: i_max must be >= 1");

  // label-sorted order fixes the summation order regardless of input order
  std::vector<const family::CurveRecord*> curves;
  curves.reserve(fam.size());
  for (const auto& r : fam) curves.push_back(&r);
  std::sort(curves.begin(), curves.end(),
            [](auto* a, auto* b) { return a->label < b->label; });

  auto ps = primes::first_k_primes(i_max);

  MurmurationSeries s;
  s.n = n;
  s.policy = policy;
  s.points.resize(i_max);

  parallel_for(i_max, threads, [&](std::size_t idx) {
    uint64_t p = ps[idx];
    double sum = 0.0, comp = 0.0;  // Kahan
    std::size_t used = 0;
    for (const auto* rec : curves) {
      std::optional<int64_t> ap;
      ec::ReducedCurve rc = ec::reduce(rec->to_curve(), p);
      if (rc.good) {
        ap = family::get_ap(cache, *rec, p, naive_cutoff);
      } else if (policy == BadPrimePolicy::Formal) {
        if (auto it = rec->bad_ap.find(p); it != rec->bad_ap.end()) ap = it->second;
      }
      if (!ap) continue;
      double v = curve_term(*ap, p, n).get_d();
      double y = v - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      ++used;
    }
    SeriesPoint pt;
    pt.i = idx + 1;
    pt.p = p;
    pt.family_size_used = used;
    pt.value = used > 0 ? sum / static_cast<double>(used) : 0.0;
    s.points[idx] = pt;
  });
  return s;
}

SeriesDiff compare_series(const MurmurationSeries& s1, const MurmurationSeries& s2) {
  if (s1.points.size() != s2.points.size())
    throw std::invalid_argument("compare_series: i-grid size mismatch");
  SeriesDiff d;
  d.abs_diff.reserve(s1.points.size());
  double total = 0.0;
  for (std::size_t k = 0; k < s1.points.size(); ++k) {
    if (s1.points[k].i != s2.points[k].i)
      throw std::invalid_argument("compare_series: i-grid mismatch at position " +
                                  std::to_string(k));
    double ad = std::abs(s1.points[k].value - s2.points[k].value);
    d.abs_diff.push_back(ad);
    d.max_abs = std::max(d.max_abs, ad);
    total += ad;
  }
  d.mean_abs = s1.points.empty() ? 0.0 : total / static_cast<double>(s1.points.size());
  return d;
}

void emit_csv(const MurmurationSeries& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << "i,p,value,count\n";
  out << std::setprecision(12);
  for (const auto& pt : s.points)
    out << pt.i << "," << pt.p << "," << pt.value << "," << pt.family_size_used << "\n";
}

MurmurationSeries parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "i,p,value,count")
    throw std::runtime_error("parse_csv: bad header in " + path);
  MurmurationSeries s;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SeriesPoint pt;
    char c1, c2, c3;
    std::istringstream is(line);
    if (!(is >> pt.i >> c1 >> pt.p >> c2 >> pt.value >> c3 >> pt.family_size_used))
      throw std::runtime_error("parse_csv: bad row: " + line);
    s.points.push_back(pt);
  }
  return s;
}

void emit_json(const MurmurationSeries& s, const std::string& path) {
  nlohmann::json j;
  j["n"] = s.n;
  j["policy"] = s.policy == BadPrimePolicy::Skip ? "skip" : "formal";
  j["points"] = nlohmann::json::array();
  for (const auto& pt : s.points)
    j["points"].push_back({{"i", pt.i}, {"p", pt.p}, {"value", pt.value},
                           {"count", pt.family_size_used}});
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_json: cannot open " + path);
  out << j.dump(1) << "\n";
}

void emit_svg(const MurmurationSeries& s, const std::string& path, bool x_is_prime) {
  std::vector<double> xs, ys;
  xs.reserve(s.points.size());
  ys.reserve(s.points.size());
  for (const auto& pt : s.points) {
    xs.push_back(x_is_prime ? static_cast<double>(pt.p) : static_cast<double>(pt.i));
    ys.push_back(pt.value);
  }
  svg::scatter_plot(path, xs, ys, "f_{r," + std::to_string(s.n) + "}",
                    x_is_prime ? "p_i" : "i", "f");
}

FitResult fit_series(const MurmurationSeries& s, bool x_is_prime) {
  std::vector<double> xs, ys;
  for (const auto& pt : s.points) {
    xs.push_back(x_is_prime ? static_cast<double>(pt.p) : static_cast<double>(pt.i));
    ys.push_back(pt.value);
  }
  return fit_murmuration(xs, ys);
}

}  // namespace hrz::murmur
