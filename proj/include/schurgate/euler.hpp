#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schurgate/characters.hpp"
#include "schurgate/elliptic.hpp"
#include "schurgate/frobenius.hpp"
#include "schurgate/monomial.hpp"

namespace schurgate {

// Truncated power series / polynomial in T, constant term first.
using Series = std::vector<CyclotomicNumber>;
Series series_mul(const Series& a, const Series& b, std::size_t terms);
Series series_inverse(const Series& a, std::size_t terms);  // a[0] must be 1
Series series_exp(const Series& log, std::size_t terms);    // log[0] must be 0
Series series_pow(const Series& a, std::int64_t k, std::size_t terms);

struct EulerFactor {
    std::uint64_t v = 0;
    Series poly;  // det(1 - Frob_v T | H^1(E) (x) rho), constant term 1
};

// Eigenvalues of rho(g) for g in class cls: linear, induced/lifted (monomial model), permutation
// and regular characters are supported.
std::vector<RootOfUnity> eigenvalues_at(const Character& chi, std::size_t cls);

// prod over eigenvalues l of rho(g) of (1 - l a_v T + l^2 v T^2).
EulerFactor twisted_euler_factor(std::int64_t a_v, std::uint64_t v, const Character& chi, std::size_t cls);

// Floating-point audit of a twisted factor: largest deviation of |reciprocal root| from sqrt(v)
// over the per-eigenvalue quadratics, or of the stored coefficients from their product.
double reciprocal_root_defect(std::int64_t a_v, std::uint64_t v, const std::vector<RootOfUnity>& eigenvalues,
                              const Series& poly);

// 1 / det(1 - Frob T) to the given number of terms, from exp(sum_k s_k chi(g^k) T^k / k) with
// s_k = alpha^k + beta^k. Works for virtual characters given by values on classes.
Series newton_local_series(std::int64_t a_v, std::uint64_t v, const MetacyclicGroup& G,
                           const std::vector<CyclotomicNumber>& values, std::size_t cls, std::size_t terms);

struct DirichletSeries {
    std::uint64_t X = 1;
    std::vector<CyclotomicNumber> an;  // an[k] is a_{k+1}
};

inline constexpr std::uint64_t kMaxSeriesBound = 100000;

// Local factor at a good unramified prime, as 1/det(...), for the class of Frobenius.
using LocalSeriesFn = std::function<Series(std::int64_t a_v, std::uint64_t v, std::size_t cls, std::size_t terms)>;

// Product of local series over good unramified v <= X; other primes contribute 1. If Frobenius
// is ambiguous, every candidate must give the same local series (else InputError listing them).
DirichletSeries dirichlet_partial(const EllipticCurve& E, const FrobeniusSource& frob, const LocalSeriesFn& local,
                                  std::uint64_t X);
DirichletSeries dirichlet_partial(const EllipticCurve& E, const Character& chi, const FrobeniusSource& frob,
                                  std::uint64_t X);
DirichletSeries dirichlet_partial(const EllipticCurve& E, const VirtualCharacter& chi, const FrobeniusSource& frob,
                                  std::uint64_t X);

// Dirichlet coefficients of L(E, s) itself, supported on good primes, by the Hecke recurrence.
DirichletSeries untwisted_coefficients(const EllipticCurve& E, std::uint64_t X);

struct IdentityCheck {
    std::uint64_t X = 1;
    std::int64_t multiplicity = 0;  // exponent on the faithful side
    bool holds = false;
    std::optional<std::uint64_t> first_mismatch;
    std::size_t good_primes = 0, ambiguous_primes = 0;
};

// Coefficients of L(E/F_{p^n}) L(E/K_{p^{n-1}}) / (L(E/K_{p^n}) L(E/F_{p^{n-1}})) from permutation
// characters, against prod over faithful tau of L(E, tau)^m from monomial eigenvalues.
IdentityCheck quotient_identity_series(const EllipticCurve& E, const IntPoly& f, const GroupPtr& G, std::uint64_t X);

// Polynomials in two commuting variables with cyclotomic coefficients, keyed by exponents.
using SymPoly = std::map<std::array<unsigned, 2>, CyclotomicNumber>;
using SymSeries = std::vector<SymPoly>;  // polynomial in T with SymPoly coefficients

SymPoly sym_add(const SymPoly& a, const SymPoly& b);
SymPoly sym_mul(const SymPoly& a, const SymPoly& b);
SymSeries sym_series_mul(const SymSeries& a, const SymSeries& b);
bool sym_equal(const SymSeries& a, const SymSeries& b);

// Twisted factor in the variables (a, v) = (alpha + beta, alpha beta).
SymSeries symbolic_twisted_factor(const Character& chi, std::size_t cls);
// prod over t of (1 - zeta_q^t alpha T)(1 - zeta_q^t beta T), in the variables (alpha, beta).
SymSeries product_form(std::uint64_t q, const std::vector<std::uint64_t>& exponents);
// Substitute a = alpha + beta, v = alpha beta.
SymSeries to_alpha_beta(const SymSeries& av);
// Whether the polynomial is the cube of a polynomial with constant term 1 (cube root by power series).
bool is_cube(const SymSeries& f);

std::string series_str(const Series& s);
std::string sym_series_str(const SymSeries& s, const std::array<std::string, 2>& vars);

}  // namespace schurgate
