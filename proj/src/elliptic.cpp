#include "schurgate/elliptic.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"

namespace schurgate {

EllipticCurve::EllipticCurve(std::array<std::int64_t, 5> a) : a_(a) {
    mpz_class a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
    mpz_class b2 = a1 * a1 + 4 * a2;
    mpz_class b4 = 2 * a4 + a1 * a3;
    mpz_class b6 = a3 * a3 + 4 * a6;
    mpz_class b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    disc_ = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc_ == 0) throw InputError("singular curve (discriminant 0)");
}

EllipticCurve EllipticCurve::parse(const std::string& spec) {
    std::array<std::int64_t, 5> a{};
    std::stringstream ss(spec);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i == 5) throw InputError("curve needs exactly five coefficients a1,a2,a3,a4,a6");
        try {
            std::size_t used = 0;
            a[i] = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("bad curve coefficient '" + item + "'");
        }
        ++i;
    }
    if (i != 5) throw InputError("curve needs exactly five coefficients a1,a2,a3,a4,a6");
    return EllipticCurve(a);
}

bool EllipticCurve::good_at(std::uint64_t v) const {
    return v != 2 && mpz_divisible_ui_p(disc_.get_mpz_t(), v) == 0;
}

std::string EllipticCurve::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(a_[i]);
    return s + "]";
}

std::int64_t trace_of_frobenius(const EllipticCurve& E, std::uint64_t v) {
    if (v > kMaxPointCountPrime) throw InputError("prime " + std::to_string(v) + " exceeds the point-count bound 10^6");
    if (!nt::is_prime(v)) throw InputError(std::to_string(v) + " is not prime");
    if (!E.good_at(v)) throw InputError("bad prime " + std::to_string(v));
    const auto& a = E.coefficients();
    auto red = [v](std::int64_t c) { return static_cast<std::uint64_t>(nt::mod(c, v)); };
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    const std::uint64_t b2 = (red(a[0]) * red(a[0]) + 4 * red(a[1])) % v;
    const std::uint64_t b4 = (2 * red(a[3]) + red(a[0]) * red(a[2])) % v;
    const std::uint64_t b6 = (red(a[2]) * red(a[2]) + 4 * red(a[4])) % v;
    std::vector<signed char> chi(v, -1);  // quadratic character
    chi[0] = 0;
    for (std::uint64_t y = 1; y < v; ++y) chi[y * y % v] = 1;
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < v; ++x) {
        std::uint64_t f = ((4 * x + b2) % v * x % v + 2 * b4) % v * x % v;
        sum += chi[(f + b6) % v];
    }
    const std::int64_t trace = -sum;
    if (static_cast<double>(trace * trace) > 4.0 * static_cast<double>(v))
        throw InvariantViolation("Hasse bound violated at " + std::to_string(v));
    return trace;
}

}  // namespace schurgate
