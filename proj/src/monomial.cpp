#include "schurgate/monomial.hpp"

#include <algorithm>

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"

namespace schurgate {

using nt::u64;

RootOfUnity RootOfUnity::make(u64 num, u64 den) {
    if (den == 0) throw InputError("root of unity with zero order");
    num %= den;
    u64 g = nt::gcd(num, den);
    if (num == 0) return {0, 1};
    return {num / g, den / g};
}

CyclotomicNumber RootOfUnity::value() const { return CyclotomicNumber::zeta(den, static_cast<std::int64_t>(num)); }

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
    u64 L = nt::lcm(den, o.den);
    return make((num * (L / den) + o.num * (L / o.den)) % L, L);
}

RootOfUnity RootOfUnity::pow(u64 k) const { return make(nt::mulmod(num, k % den, den), den); }

MonomialMatrix MonomialMatrix::identity(std::size_t dim, u64 N) {
    MonomialMatrix m;
    m.N = N;
    m.image.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) m.image[k] = static_cast<std::uint32_t>(k);
    m.exponent.assign(dim, 0);
    return m;
}

MonomialMatrix MonomialMatrix::operator*(const MonomialMatrix& o) const {
    if (dim() != o.dim() || N != o.N) throw InputError("monomial matrices of different shapes");
    MonomialMatrix out;
    out.N = N;
    out.image.resize(dim());
    out.exponent.resize(dim());
    for (std::size_t k = 0; k < dim(); ++k) {
        std::uint32_t mid = o.image[k];
        out.image[k] = image[mid];
        out.exponent[k] = (o.exponent[k] + exponent[mid]) % N;
    }
    return out;
}

MonomialMatrix MonomialMatrix::pow(u64 k) const {
    MonomialMatrix result = identity(dim(), N), base = *this;
    for (; k; k >>= 1) {
        if (k & 1) result = result * base;
        base = base * base;
    }
    return result;
}

MonomialMatrix MonomialMatrix::inverse() const {
    MonomialMatrix out;
    out.N = N;
    out.image.resize(dim());
    out.exponent.resize(dim());
    for (std::size_t k = 0; k < dim(); ++k) {
        out.image[image[k]] = static_cast<std::uint32_t>(k);
        out.exponent[image[k]] = (N - exponent[k] % N) % N;
    }
    return out;
}

CyclotomicNumber MonomialMatrix::trace() const {
    std::vector<std::pair<std::int64_t, Rational>> terms;
    for (std::size_t k = 0; k < dim(); ++k)
        if (image[k] == k) terms.emplace_back(static_cast<std::int64_t>(exponent[k]), Rational(1));
    return CyclotomicNumber::from_exponents(N, terms);
}

std::vector<std::vector<CyclotomicNumber>> MonomialMatrix::dense() const {
    std::vector<std::vector<CyclotomicNumber>> out(dim(), std::vector<CyclotomicNumber>(dim()));
    for (std::size_t k = 0; k < dim(); ++k)
        out[image[k]][k] = CyclotomicNumber::zeta(N, static_cast<std::int64_t>(exponent[k]));
    return out;
}

std::vector<RootOfUnity> MonomialMatrix::eigenvalues() const {
    std::vector<RootOfUnity> out;
    std::vector<bool> seen(dim(), false);
    for (std::size_t start = 0; start < dim(); ++start) {
        if (seen[start]) continue;
        u64 len = 0, sum = 0;
        for (std::size_t k = start; !seen[k]; k = image[k]) {
            seen[k] = true;
            ++len;
            sum = (sum + exponent[k]) % N;
        }
        for (u64 t = 0; t < len; ++t) out.push_back(RootOfUnity::make(sum + N * t, N * len));
    }
    std::sort(out.begin(), out.end());
    return out;
}

MonomialMatrix MonomialModel::at(const GroupElement& g) const {
    return a.pow(g.x % group->q()) * b.pow(g.y % group->pn());
}

MonomialModel monomial_model(const GroupPtr& G, const PsiDescriptor& psi) {
    const u64 q = G->q(), pr = G->pr(), d = G->pn() / pr, N = q * d;
    MonomialModel m{G, {psi.u % q, psi.w % d}, MonomialMatrix::identity(pr, N), MonomialMatrix::identity(pr, N)};
    for (u64 k = 0; k < pr; ++k) {
        m.a.exponent[k] = (m.psi.u * G->j_power(k) % q) * d;
        m.b.image[k] = static_cast<std::uint32_t>(k == 0 ? pr - 1 : k - 1);
    }
    m.b.exponent[0] = m.psi.w * q % N;
    return m;
}

MonomialModel monomial_model(const Character& tau) {
    if (!is_faithful(tau)) throw InputError("monomial model needs a faithful character");
    return monomial_model(tau.group_ptr(), descriptor_of(tau));
}

}  // namespace schurgate
