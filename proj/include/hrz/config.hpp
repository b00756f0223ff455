#ifndef HRZ_CONFIG_HPP
#define HRZ_CONFIG_HPP

#include <cstdint>
#include <string>

namespace hrz {

// Shared CLI/runtime configuration.  Sources, in increasing precedence:
// defaults, key=value config file, MURMUR_* environment, command-line flags.
struct Config {
  std::string cache_path;              // empty = no persistent a_p cache
  uint64_t naive_cutoff = 1 << 14;     // naive/BSGS switch, >= 5
  int n_max = 16;
  unsigned threads = 1;
  std::string out_dir = ".";
  std::string bad_prime_policy = "skip";  // skip | formal
  std::string clamp_policy = "include";   // include | exclude

  // Throws std::invalid_argument on violated invariants.
  void validate() const;

  // MURMUR_CACHE, MURMUR_THREADS
  void apply_env();

  static Config from_file(const std::string& path);
};

}  // namespace hrz

#endif
