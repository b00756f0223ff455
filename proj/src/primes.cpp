#include "hrz/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hrz::primes {

std::vector<uint64_t> primes_up_to(uint64_t limit) {
  std::vector<uint64_t> out;
  if (limit < 2) return out;
  const uint64_t segment_size = 1 << 18;
  uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;

  // small primes up to sqrt(limit)
  std::vector<uint8_t> is_prime(root + 1, 1);
  for (uint64_t i = 2; i * i <= root; ++i)
    if (is_prime[i])
      for (uint64_t j = i * i; j <= root; j += i) is_prime[j] = 0;

  std::vector<uint64_t> small;
  std::vector<uint64_t> next;
  out.push_back(2);

  std::vector<uint8_t> sieve(segment_size);
  uint64_t s = 3, n = 3;
  for (uint64_t low = 0; low <= limit; low += segment_size) {
    std::fill(sieve.begin(), sieve.end(), 1);
    uint64_t high = std::min(low + segment_size - 1, limit);
    for (; s * s <= high; s += 2) {
      if (is_prime[s]) {
        small.push_back(s);
        next.push_back(s * s - low);
      }
    }
    for (std::size_t i = 0; i < small.size(); ++i) {
      uint64_t j = next[i];
      for (uint64_t k = small[i] * 2; j < segment_size; j += k) sieve[j] = 0;
      next[i] = j - segment_size;
    }
    for (; n <= high; n += 2)
      if (sieve[n - low]) out.push_back(n);
  }
  return out;
}

std::vector<uint64_t> first_k_primes(std::size_t k) {
  if (k == 0) throw std::invalid_argument("first_k_primes: k must be >= 1");
  // p_k < k (ln k + ln ln k) for k >= 6
  uint64_t bound = 16;
  if (k >= 6) {
    double kd = static_cast<double>(k);
    bound = static_cast<uint64_t>(kd * (std::log(kd) + std::log(std::log(kd)))) + 16;
  }
  std::vector<uint64_t> ps = primes_up_to(bound);
  while (ps.size() < k) {
    bound *= 2;
    ps = primes_up_to(bound);
  }
  ps.resize(k);
  return ps;
}

}  // namespace hrz::primes
