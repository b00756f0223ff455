#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "hrz/config.hpp"
#include "hrz/ec.hpp"
#include "hrz/family.hpp"
#include "hrz/murmuration.hpp"
#include "hrz/primes.hpp"
#include "hrz/satotate.hpp"
#include "hrz/zeta.hpp"

// Exit codes: 0 success, 1 I/O or parse failure, 2 domain rejection
// (CM curve, bad reduction, empty family).

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitDomain = 2;

struct CurveArgs {
  std::string coeffs;  // "a1,a2,a3,a4,a6"
  std::string label;
  std::string family_file;
};

hrz::ec::CurveQ resolve_curve(const CurveArgs& args) {
  if (!args.coeffs.empty()) {
    std::vector<mpz_class> a;
    std::stringstream ss(args.coeffs);
    std::string tok;
    while (std::getline(ss, tok, ',')) a.emplace_back(tok);
    if (a.size() != 5)
      throw std::runtime_error("--curve expects 5 comma-separated a-invariants");
    hrz::ec::CurveQ e{a[0], a[1], a[2], a[3], a[4]};
    if (hrz::ec::discriminant(e) == 0) throw std::runtime_error("--curve: singular model");
    return e;
  }
  if (args.label.empty() || args.family_file.empty())
    throw std::runtime_error("need --curve, or --label together with --family");
  for (const auto& rec : hrz::family::load_all(args.family_file))
    if (rec.label == args.label) return rec.to_curve();
  throw std::runtime_error("label not found in family file: " + args.label);
}

std::string rat_str(const mpq_class& q) {
  std::ostringstream os;
  os << q.get_num() << "/" << q.get_den();
  return os.str();
}

int cmd_ap(const CurveArgs& cargs, uint64_t pmax, const hrz::Config& cfg) {
  auto curve = resolve_curve(cargs);
  std::cout << "p,ap\n";
  for (uint64_t p : hrz::primes::primes_up_to(pmax)) {
    auto rc = hrz::ec::reduce(curve, p);
    if (!rc.good) continue;
    auto pc = hrz::ec::count_points(rc, hrz::ec::Strategy::Auto, cfg.naive_cutoff);
    std::cout << p << "," << pc.a_trace << "\n";
  }
  return kExitOk;
}

int cmd_zeta(const std::string& q_str, const std::string& a1_str, int n,
             const hrz::Config& cfg) {
  mpz_class q(q_str), a1(a1_str);
  int depth = std::max(n, 1);
  if (depth > cfg.n_max) throw std::runtime_error("n exceeds configured n_max");
  hrz::zeta::BetaSequence bs(q, a1, depth);
  auto ri = hrz::zeta::zeta_polynomial(bs, n);
  auto ad = hrz::zeta::theta_n(ri);
  nlohmann::json j;
  j["q"] = q.get_str();
  j["a1"] = a1.get_str();
  j["n"] = n;
  j["betas"] = nlohmann::json::array();
  for (int k = -1; k <= depth; ++k) j["betas"].push_back(rat_str(bs.beta(k)));
  j["a_n"] = rat_str(ri.a_n);
  j["P"] = {rat_str(ri.p_coeffs[0]), rat_str(ri.p_coeffs[1]), rat_str(ri.p_coeffs[2])};
  j["theta"] = ad.theta;
  if (n >= 2) {
    ad = hrz::zeta::delta_n(ri, ad);
    j["delta"] = ad.delta;
  } else {
    j["delta"] = nullptr;
  }
  j["clamped"] = ad.clamped;
  j["rh"] = hrz::zeta::rh_check(ri);
  std::cout << j.dump(1) << "\n";
  return kExitOk;
}

int cmd_murmurate(const std::string& family_file, int rank, const std::string& conductor,
                  int n, std::size_t imax, bool do_fit, bool x_is_prime,
                  const hrz::Config& cfg) {
  hrz::family::FamilyFilter filter;
  filter.rank = rank;
  auto colon = conductor.find(':');
  if (colon == std::string::npos)
    throw std::runtime_error("--conductor expects N1:N2");
  filter.n1 = mpz_class(conductor.substr(0, colon));
  filter.n2 = mpz_class(conductor.substr(colon + 1));
  auto fam = hrz::family::load_family(family_file, filter, true);
  if (fam.empty()) {
    std::cerr << "error: empty family after filtering\n";
    return kExitDomain;
  }
  hrz::family::ApCache cache(cfg.cache_path);
  auto policy = cfg.bad_prime_policy == "formal" ? hrz::murmur::BadPrimePolicy::Formal
                                                 : hrz::murmur::BadPrimePolicy::Skip;
  auto series =
      hrz::murmur::f_series(fam, n, imax, policy, &cache, cfg.threads, cfg.naive_cutoff);
  series.filter = filter;
  std::string base = cfg.out_dir + "/murmuration_r" + std::to_string(rank) + "_n" +
                     std::to_string(n);
  hrz::murmur::emit_csv(series, base + ".csv");
  hrz::murmur::emit_svg(series, base + ".svg", x_is_prime);
  std::cerr << "wrote " << base << ".csv and .svg (" << fam.size() << " curves)\n";
  if (do_fit) {
    auto fit = hrz::murmur::fit_series(series, x_is_prime);
    nlohmann::json j;
    j["A"] = fit.amp;
    j["alpha"] = fit.alpha;
    j["B"] = fit.freq;
    j["beta"] = fit.beta;
    j["residual_rms"] = fit.residual_rms;
    j["converged"] = fit.converged;
    std::ofstream out(base + "_fit.json");
    out << j.dump(1) << "\n";
    std::cout << j.dump(1) << "\n";
  }
  return kExitOk;
}

int cmd_satotate(const CurveArgs& cargs, int n, uint64_t pmax, int bins, bool allow_cm,
                 const hrz::Config& cfg) {
  auto curve = resolve_curve(cargs);
  hrz::st::SampleOptions opts;
  opts.allow_cm = allow_cm;
  opts.threads = cfg.threads;
  opts.naive_cutoff = cfg.naive_cutoff;
  auto samples = hrz::st::delta_samples(curve, n, pmax, opts);
  auto policy = cfg.clamp_policy == "exclude" ? hrz::st::ClampPolicy::Exclude
                                              : hrz::st::ClampPolicy::Include;
  auto report = hrz::st::make_report(samples, n, pmax, bins, policy);
  std::string base = cfg.out_dir + "/satotate_n" + std::to_string(n);
  hrz::st::emit_json(report, base + ".json");
  hrz::st::emit_csv(samples, base + ".csv");
  hrz::st::emit_svg(report, base + ".svg");
  std::cout << "n=" << n << " N=" << pmax << " samples=" << report.sample_count
            << " clamped=" << report.clamp_count << " ks=" << std::setprecision(12)
            << report.ks << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-n zeta invariants of elliptic curves: a_p tables, exact "
               "beta-recursion zeta data, murmuration series, Sato-Tate reports"};
  app.require_subcommand(1);

  hrz::Config cfg;
  std::string config_file;
  app.add_option("--config", config_file, "key=value config file");
  app.add_option("--cache", cfg.cache_path, "a_p cache CSV path");
  app.add_option("--threads", cfg.threads, "worker threads");
  app.add_option("--cutoff", cfg.naive_cutoff, "naive/BSGS point-count cutoff");
  app.add_option("--outdir", cfg.out_dir, "output directory");
  app.add_option("--bad-primes", cfg.bad_prime_policy, "bad-prime policy: skip|formal");
  app.add_option("--clamp", cfg.clamp_policy, "clamp policy: include|exclude");

  CurveArgs cargs;

  auto* ap = app.add_subcommand("ap", "a_p table over good primes");
  uint64_t pmax = 100;
  ap->add_option("--curve", cargs.coeffs, "a1,a2,a3,a4,a6");
  ap->add_option("--label", cargs.label, "curve label (with --family)");
  ap->add_option("--family", cargs.family_file, "family CSV for label lookup");
  ap->add_option("--pmax", pmax, "upper prime bound")->required();

  auto* zeta = app.add_subcommand("zeta", "exact rank-n zeta invariants");
  std::string q_str, a1_str;
  int zn = 1;
  zeta->add_option("--q", q_str, "prime power q >= 2")->required();
  zeta->add_option("--a1", a1_str, "rank-one trace")->required();
  zeta->add_option("--n", zn, "geometric rank")->required();

  auto* mur = app.add_subcommand("murmurate", "rank-n murmuration series");
  std::string family_file, conductor = "1:0";
  int rank = 0, mn = 1;
  std::size_t imax = 100;
  bool do_fit = false, x_is_prime = false;
  mur->add_option("--family", family_file, "family CSV")->required();
  mur->add_option("--rank", rank, "arithmetic rank filter")->required();
  mur->add_option("--conductor", conductor, "conductor range N1:N2")->required();
  mur->add_option("--n", mn, "geometric rank");
  mur->add_option("--imax", imax, "number of primes");
  mur->add_flag("--fit", do_fit, "fit A x^alpha sin(B x^beta)");
  mur->add_flag("--x-prime", x_is_prime, "plot against p_i instead of i");

  auto* st = app.add_subcommand("satotate", "big-Delta distribution report");
  int sn = 3, bins = 20;
  uint64_t spmax = 10000;
  bool allow_cm = false;
  st->add_option("--curve", cargs.coeffs, "a1,a2,a3,a4,a6");
  st->add_option("--label", cargs.label, "curve label (with --family)");
  st->add_option("--family", cargs.family_file, "family CSV for label lookup");
  st->add_option("--n", sn, "geometric rank");
  st->add_option("--pmax", spmax, "upper prime bound")->required();
  st->add_option("--bins", bins, "histogram bins");
  st->add_flag("--allow-cm", allow_cm, "proceed on CM curves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitIo;
  }

  try {
    if (!config_file.empty()) {
      auto file_cfg = hrz::Config::from_file(config_file);
      // flags already parsed win only where explicitly set; keep it simple:
      // file first, then env, then re-apply explicit flags
      if (cfg.cache_path.empty()) cfg.cache_path = file_cfg.cache_path;
      if (cfg.threads == 1) cfg.threads = file_cfg.threads;
      if (cfg.naive_cutoff == (1 << 14)) cfg.naive_cutoff = file_cfg.naive_cutoff;
      if (cfg.out_dir == ".") cfg.out_dir = file_cfg.out_dir;
    }
    cfg.apply_env();
    cfg.validate();

    if (*ap) return cmd_ap(cargs, pmax, cfg);
    if (*zeta) return cmd_zeta(q_str, a1_str, zn, cfg);
    if (*mur)
      return cmd_murmurate(family_file, rank, conductor, mn, imax, do_fit, x_is_prime, cfg);
    if (*st) return cmd_satotate(cargs, sn, spmax, bins, allow_cm, cfg);
  } catch (const hrz::st::cm_rejection_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const hrz::ec::bad_reduction_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}
