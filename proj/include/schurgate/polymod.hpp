#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace schurgate {

// Integer polynomial, coefficients from the constant term up.
class IntPoly {
public:
    explicit IntPoly(std::vector<mpz_class> coeffs);
    // Comma-separated coefficients from the leading one down, or a builtin name ("example-F1").
    static IntPoly parse(const std::string& spec);
    static IntPoly example_f1();

    std::size_t degree() const { return c_.size() - 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool monic() const { return c_.back() == 1; }
    IntPoly derivative() const;
    mpz_class discriminant() const;
    std::string str() const;

private:
    std::vector<mpz_class> c_;
};

mpz_class resultant(const IntPoly& f, const IntPoly& g);

// Degrees of the irreducible factors of f mod v, sorted; f must be squarefree mod v.
std::vector<unsigned> factorization_pattern(const IntPoly& f, std::uint64_t v);

}  // namespace schurgate
