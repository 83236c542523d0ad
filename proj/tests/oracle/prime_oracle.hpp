#pragma once

#include <cstdint>
#include <vector>

namespace oracle {

inline bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::vector<std::uint32_t> primes_trial(std::uint32_t x) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t n = 2; n <= x; ++n) {
        if (is_prime_trial(n)) out.push_back(n);
    }
    return out;
}

}  // namespace oracle
