#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>

namespace schurgate {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
class EllipticCurve {
public:
    explicit EllipticCurve(std::array<std::int64_t, 5> a);
    // "a1,a2,a3,a4,a6"
    static EllipticCurve parse(const std::string& spec);

    const std::array<std::int64_t, 5>& coefficients() const { return a_; }
    const mpz_class& discriminant() const { return disc_; }
    bool good_at(std::uint64_t v) const;  // v odd and v does not divide the discriminant
    std::string str() const;

private:
    std::array<std::int64_t, 5> a_;
    mpz_class disc_;
};

inline constexpr std::uint64_t kMaxPointCountPrime = 1000000;

// v + 1 - #E(F_v) for odd primes of good reduction, v <= 10^6.
std::int64_t trace_of_frobenius(const EllipticCurve& E, std::uint64_t v);

}  // namespace schurgate
