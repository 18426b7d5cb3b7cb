#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schurgate/rational.hpp"

namespace schurgate {

// Largest conductor any operation may produce. Defaults to 10^6; the environment
// variable SCHURGATE_MAX_CONDUCTOR overrides the default on first use.
std::uint64_t max_conductor();
void set_max_conductor(std::uint64_t bound);

// Exact element of Q(zeta_m), held in the power basis modulo the m-th cyclotomic
// polynomial with only the nonzero coefficients stored. Every value is kept at its
// minimal conductor, so equal numbers have identical representations. Values are
// immutable and share storage on copy.
class CyclotomicNumber {
public:
    struct Term {
        std::uint32_t exp;
        Rational coeff;
        friend bool operator==(const Term&, const Term&) = default;
    };

    CyclotomicNumber();
    CyclotomicNumber(std::int64_t value);
    CyclotomicNumber(const Rational& value);

    // zeta_m^k for any integer k.
    static CyclotomicNumber zeta(std::uint64_t m, std::int64_t k = 1);
    // Sum of coeff * zeta_m^exp over arbitrary integer exponents.
    static CyclotomicNumber from_exponents(std::uint64_t m, const std::vector<std::pair<std::int64_t, Rational>>& terms);
    // Dense power-basis coefficients at conductor m (length phi(m)).
    static CyclotomicNumber from_coeffs(std::uint64_t m, const std::vector<Rational>& coeffs);

    std::uint64_t conductor() const;
    const std::vector<Term>& terms() const;
    std::vector<Rational> coeffs() const;

    bool is_zero() const;
    bool is_rational() const { return conductor() == 1; }
    std::optional<Rational> rational_value() const;
    // True when every power-basis coefficient is an integer (an algebraic integer).
    bool is_integral() const;

    CyclotomicNumber operator-() const;
    CyclotomicNumber inverse() const;
    CyclotomicNumber conj() const { return galois(-1); }
    // Image under zeta_m -> zeta_m^k, m the conductor; k must be coprime to m.
    CyclotomicNumber galois(std::int64_t k) const;

    friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b) { return a * b.inverse(); }
    CyclotomicNumber& operator+=(const CyclotomicNumber& o) { return *this = *this + o; }
    CyclotomicNumber& operator-=(const CyclotomicNumber& o) { return *this = *this - o; }
    CyclotomicNumber& operator*=(const CyclotomicNumber& o) { return *this = *this * o; }

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

    std::size_t hash() const;
    // Address of the shared storage; equal addresses imply equal values.
    const void* identity() const { return impl_.get(); }

    // Value under the embedding zeta_m -> exp(2 pi i / m). Display and numeric checks only.
    std::complex<double> approx() const;
    std::string to_string() const;

    struct Impl;

private:
    explicit CyclotomicNumber(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    friend class CyclotomicSum;
    friend CyclotomicNumber make_cyclotomic(std::uint64_t m, std::vector<Term> terms, bool canonical);

    std::shared_ptr<const Impl> impl_;
};

struct CyclotomicHash {
    std::size_t operator()(const CyclotomicNumber& x) const { return x.hash(); }
};

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x);

// Accumulates a weighted sum of cyclotomic numbers and reduces once at the end.
class CyclotomicSum {
public:
    void add(const CyclotomicNumber& x, const Rational& weight = Rational(1));
    CyclotomicNumber value() const;

private:
    std::vector<std::pair<CyclotomicNumber, Rational>> parts_;
};

// Trace from Q(zeta_m) down to Q, where m is the conductor of x.
Rational absolute_trace(const CyclotomicNumber& x);
// Rational part of a * conj(b): its trace divided by the degree of any cyclotomic field
// containing it. Equals a * conj(b) whenever that product is rational.
Rational hermitian_trace(const CyclotomicNumber& a, const CyclotomicNumber& b);

// Abelian number field, given as the fixed field of a subgroup of (Z/m)^x acting on
// Q(zeta_m). Always stored at the minimal conductor.
class AbelianField {
public:
    AbelianField(std::uint64_t conductor, std::vector<std::uint64_t> stabilizer);

    static AbelianField rationals() { return AbelianField(1, {1}); }
    static AbelianField cyclotomic(std::uint64_t m);

    std::uint64_t conductor() const { return conductor_; }
    const std::vector<std::uint64_t>& stabilizer() const { return stabilizer_; }
    std::uint64_t degree() const;

    // Stabilizer of this field viewed inside Q(zeta_m); m must be a multiple of the conductor.
    std::vector<std::uint64_t> stabilizer_at(std::uint64_t m) const;
    bool contains(const CyclotomicNumber& x) const;
    AbelianField compositum(const AbelianField& other) const;

    friend bool operator==(const AbelianField&, const AbelianField&) = default;

private:
    std::uint64_t conductor_;
    std::vector<std::uint64_t> stabilizer_;
};

// Smallest abelian field containing every value: the fixed field of the common
// stabilizer at the lcm of the conductors.
AbelianField field_of_values(const std::vector<CyclotomicNumber>& values);

}  // namespace schurgate

template <>
struct std::hash<schurgate::CyclotomicNumber> {
    std::size_t operator()(const schurgate::CyclotomicNumber& x) const { return x.hash(); }
};
