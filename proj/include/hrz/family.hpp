#ifndef HRZ_FAMILY_HPP
#define HRZ_FAMILY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrz/ec.hpp"

namespace hrz::family {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One row of the family CSV:
//   label,isogeny_class,a1,a2,a3,a4,a6,conductor,rank[,cm][,bad_ap_json]
struct CurveRecord {
  std::string label;
  std::string isogeny_class;
  std::array<mpz_class, 5> a{};
  mpz_class conductor;
  int rank = 0;
  std::optional<bool> cm;
  std::map<uint64_t, int64_t> bad_ap;  // ingested a_p at bad primes, if any

  ec::CurveQ to_curve() const;
};

struct FamilyFilter {
  int rank = 0;
  mpz_class n1 = 1;  // conductor range [n1, n2]
  mpz_class n2 = 0;  // n2 < n1 means unbounded above
};

// Loads and filters records; with dedupe, keeps the lexicographically
// smallest label per isogeny class.  Throws parse_error with a line number.
std::vector<CurveRecord> load_family(const std::string& path, const FamilyFilter& filter,
                                     bool dedupe);

// All records, no rank/conductor filtering.
std::vector<CurveRecord> load_all(const std::string& path);

// Append-only a_p cache backed by a CSV file `label,p,ap`.  A trailing
// partial line (crash leftover) is ignored on load.  Thread-safe.
class ApCache {
 public:
  ApCache() = default;                       // in-memory only
  explicit ApCache(const std::string& path);  // loads, appends on put
  ~ApCache();

  std::optional<int64_t> get(const std::string& label, uint64_t p) const;
  void put(const std::string& label, uint64_t p, int64_t ap);
  void flush();
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::pair<std::string, uint64_t>, int64_t> map_;
  std::string path_;
  std::string pending_;
};

// a_p via cache, point counting at good primes, or the ingested bad-prime
// column.  Returns nullopt when p is bad and no ingested value exists.
std::optional<int64_t> get_ap(ApCache* cache, const CurveRecord& rec, uint64_t p,
                              uint64_t naive_cutoff = 1 << 14);

}  // namespace hrz::family

#endif
