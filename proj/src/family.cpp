#include "hrz/family.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hrz::family {

ec::CurveQ CurveRecord::to_curve() const {
  ec::CurveQ e;
  e.a1 = a[0];
  e.a2 = a[1];
  e.a3 = a[2];
  e.a4 = a[3];
  e.a6 = a[4];
  e.label = label;
  e.conductor = conductor;
  e.rank = rank;
  e.cm = cm;
  return e;
}

namespace {

// CSV field split with double-quote quoting ("" escapes a quote).
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(std::move(field));
  return out;
}

mpz_class parse_int(const std::string& s, const char* what, std::size_t lineno) {
  try {
    if (s.empty()) throw std::invalid_argument("empty");
    return mpz_class(s);
  } catch (const std::exception&) {
    throw parse_error("line " + std::to_string(lineno) + ": bad integer for " + what + ": '" +
                      s + "'");
  }
}

}  // namespace

namespace {
std::vector<CurveRecord> load_impl(const std::string& path, const FamilyFilter* filter,
                                   bool dedupe);
}

std::vector<CurveRecord> load_family(const std::string& path, const FamilyFilter& filter,
                                     bool dedupe) {
  return load_impl(path, &filter, dedupe);
}

std::vector<CurveRecord> load_all(const std::string& path) {
  return load_impl(path, nullptr, false);
}

namespace {
std::vector<CurveRecord> load_impl(const std::string& path, const FamilyFilter* filter,
                                   bool dedupe) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open family file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw parse_error("empty family file: " + path);

  auto header = split_csv(line);
  static const char* kRequired[] = {"label", "isogeny_class", "a1", "a2", "a3",
                                    "a4",    "a6",            "conductor", "rank"};
  if (header.size() < 9) throw parse_error("line 1: schema mismatch, expected at least 9 columns");
  for (std::size_t i = 0; i < 9; ++i)
    if (header[i] != kRequired[i])
      throw parse_error("line 1: schema mismatch, column " + std::to_string(i + 1) +
                        " is '" + header[i] + "', expected '" + kRequired[i] + "'");
  int cm_col = -1, bad_col = -1;
  for (std::size_t i = 9; i < header.size(); ++i) {
    if (header[i] == "cm")
      cm_col = static_cast<int>(i);
    else if (header[i] == "bad_ap_json")
      bad_col = static_cast<int>(i);
    else
      throw parse_error("line 1: unknown column '" + header[i] + "'");
  }

  std::vector<CurveRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = split_csv(line);
    if (f.size() < 9)
      throw parse_error("line " + std::to_string(lineno) + ": expected >= 9 fields, got " +
                        std::to_string(f.size()));
    CurveRecord r;
    r.label = f[0];
    r.isogeny_class = f[1];
    for (int i = 0; i < 5; ++i) r.a[i] = parse_int(f[2 + i], "a-invariant", lineno);
    r.conductor = parse_int(f[7], "conductor", lineno);
    r.rank = static_cast<int>(parse_int(f[8], "rank", lineno).get_si());
    if (cm_col >= 0 && static_cast<std::size_t>(cm_col) < f.size() && !f[cm_col].empty())
      r.cm = (f[cm_col] == "1" || f[cm_col] == "true");
    if (bad_col >= 0 && static_cast<std::size_t>(bad_col) < f.size() && !f[bad_col].empty()) {
      try {
        auto j = nlohmann::json::parse(f[bad_col]);
        for (auto& [k, v] : j.items()) r.bad_ap[std::stoull(k)] = v.get<int64_t>();
      } catch (const std::exception& e) {
        throw parse_error("line " + std::to_string(lineno) + ": bad_ap_json: " + e.what());
      }
    }
    if (ec::discriminant(r.to_curve()) == 0)
      throw parse_error("line " + std::to_string(lineno) + ": singular model for " + r.label);

    if (filter) {
      if (r.rank != filter->rank) continue;
      if (r.conductor < filter->n1) continue;
      if (filter->n2 >= filter->n1 && r.conductor > filter->n2) continue;
    }
    out.push_back(std::move(r));
  }

  std::sort(out.begin(), out.end(),
            [](const CurveRecord& a, const CurveRecord& b) { return a.label < b.label; });
  if (dedupe) {
    std::vector<CurveRecord> kept;
    for (auto& r : out) {
      bool seen = std::any_of(kept.begin(), kept.end(), [&](const CurveRecord& k) {
        return k.isogeny_class == r.isogeny_class;
      });
      if (!seen) kept.push_back(std::move(r));
    }
    out = std::move(kept);
  }
  return out;
}
}  // namespace

ApCache::ApCache(const std::string& path) : path_(path) {
  std::ifstream in(path);
  if (!in) return;  // fresh cache
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 3) continue;  // partial or foreign line, skip
    try {
      map_[{f[0], std::stoull(f[1])}] = std::stoll(f[2]);
    } catch (const std::exception&) {
      continue;
    }
  }
}

ApCache::~ApCache() {
  try {
    flush();
  } catch (...) {
  }
}

std::optional<int64_t> ApCache::get(const std::string& label, uint64_t p) const {
  std::lock_guard lk(mu_);
  auto it = map_.find({label, p});
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void ApCache::put(const std::string& label, uint64_t p, int64_t ap) {
  std::lock_guard lk(mu_);
  auto [it, inserted] = map_.emplace(std::make_pair(label, p), ap);
  if (!inserted) return;
  if (!path_.empty())
    pending_ += label + "," + std::to_string(p) + "," + std::to_string(ap) + "\n";
}

void ApCache::flush() {
  std::lock_guard lk(mu_);
  if (path_.empty() || pending_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  out << pending_;
  pending_.clear();
}

std::size_t ApCache::size() const {
  std::lock_guard lk(mu_);
  return map_.size();
}

std::optional<int64_t> get_ap(ApCache* cache, const CurveRecord& rec, uint64_t p,
                              uint64_t naive_cutoff) {
  if (cache) {
    if (auto hit = cache->get(rec.label, p)) return hit;
  }
  ec::ReducedCurve rc = ec::reduce(rec.to_curve(), p);
  std::optional<int64_t> ap;
  if (rc.good) {
    ap = ec::count_points(rc, ec::Strategy::Auto, naive_cutoff).a_trace;
  } else if (auto it = rec.bad_ap.find(p); it != rec.bad_ap.end()) {
    ap = it->second;
  }
  if (ap && cache) cache->put(rec.label, p, *ap);
  return ap;
}

}  // namespace hrz::family
