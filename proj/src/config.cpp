#include "hrz/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace hrz {

void Config::validate() const {
  if (naive_cutoff < 5) throw std::invalid_argument("config: naive_cutoff must be >= 5");
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  if (n_max < 1) throw std::invalid_argument("config: n_max must be >= 1");
  if (bad_prime_policy != "skip" && bad_prime_policy != "formal")
    throw std::invalid_argument("config: bad_prime_policy must be skip or formal");
  if (clamp_policy != "include" && clamp_policy != "exclude")
    throw std::invalid_argument("config: clamp_policy must be include or exclude");
}

void Config::apply_env() {
  if (const char* c = std::getenv("MURMUR_CACHE")) cache_path = c;
  if (const char* t = std::getenv("MURMUR_THREADS")) threads = std::stoul(t);
}

Config Config::from_file(const std::string& path) {
  Config cfg;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "cache")
      cfg.cache_path = val;
    else if (key == "naive_cutoff")
      cfg.naive_cutoff = std::stoull(val);
    else if (key == "n_max")
      cfg.n_max = std::stoi(val);
    else if (key == "threads")
      cfg.threads = std::stoul(val);
    else if (key == "out_dir")
      cfg.out_dir = val;
    else if (key == "bad_prime_policy")
      cfg.bad_prime_policy = val;
    else if (key == "clamp_policy")
      cfg.clamp_policy = val;
    else
      throw std::runtime_error("config: line " + std::to_string(lineno) + ": unknown key " + key);
  }
  cfg.validate();
  return cfg;
}

}  // namespace hrz
