#ifndef HRZ_PRIMES_HPP
#define HRZ_PRIMES_HPP

#include <cstdint>
#include <vector>

namespace hrz::primes {

// Segmented sieve of Eratosthenes.  Ascending primes <= limit.
std::vector<uint64_t> primes_up_to(uint64_t limit);

// The first k primes, p_1 = 2, p_2 = 3, ...
std::vector<uint64_t> first_k_primes(std::size_t k);

}  // namespace hrz::primes

#endif
