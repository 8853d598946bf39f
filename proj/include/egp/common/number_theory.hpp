#pragma once

#include <cstdint>
#include <vector>

namespace egp {

/// Deterministic primality test valid for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

/// All primes q with lo <= q <= hi, ascending.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

}  // namespace egp
