#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace schurgate::nt {

using u64 = std::uint64_t;
using i64 = std::int64_t;

u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);  // throws ArithmeticError on overflow
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
u64 ipow(u64 base, unsigned exp);  // throws ArithmeticError on overflow
u64 inverse_mod(u64 a, u64 m);     // throws ArithmeticError if not invertible

// Least non-negative residue of a signed value.
inline u64 mod(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

bool is_prime(u64 n);
std::vector<std::pair<u64, unsigned>> factorize(u64 n);
std::vector<u64> prime_factors(u64 n);
u64 euler_phi(u64 n);
int mobius(u64 n);
u64 radical(u64 n);
unsigned valuation(u64 n, u64 p);

// Multiplicative order of a modulo m; requires gcd(a, m) = 1.
u64 multiplicative_order(u64 a, u64 m);

// k if n = p^k (k >= 0), otherwise -1.
int prime_power_exponent(u64 n, u64 p);

std::vector<u64> primes_up_to(u64 n);
std::vector<u64> divisors(u64 n);

// Generators of the unit group (Z/m)^x, one per cyclic factor of a CRT decomposition.
std::vector<u64> unit_group_generators(u64 m);

}  // namespace schurgate::nt
