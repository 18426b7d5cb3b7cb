#pragma once

#include <cstdint>
#include <vector>

#include "schurgate/characters.hpp"

namespace schurgate {

// exp(2 pi i num / den), reduced with 0 <= num < den.
struct RootOfUnity {
    std::uint64_t num = 0, den = 1;
    static RootOfUnity make(std::uint64_t num, std::uint64_t den);
    CyclotomicNumber value() const;
    RootOfUnity operator*(const RootOfUnity& o) const;
    RootOfUnity pow(std::uint64_t k) const;
    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
    friend auto operator<=>(const RootOfUnity&, const RootOfUnity&) = default;
};

// Monomial matrix with N-th root of unity entries: M e_k = zeta_N^{exponent[k]} e_{image[k]}.
struct MonomialMatrix {
    std::uint64_t N = 1;
    std::vector<std::uint32_t> image;
    std::vector<std::uint64_t> exponent;

    static MonomialMatrix identity(std::size_t dim, std::uint64_t N);
    std::size_t dim() const { return image.size(); }
    MonomialMatrix operator*(const MonomialMatrix& o) const;
    MonomialMatrix pow(std::uint64_t k) const;
    MonomialMatrix inverse() const;
    CyclotomicNumber trace() const;
    // Row-major dense form.
    std::vector<std::vector<CyclotomicNumber>> dense() const;
    // With multiplicity: a cycle of length c and scalar product s contributes the c-th roots of s.
    std::vector<RootOfUnity> eigenvalues() const;
    friend bool operator==(const MonomialMatrix&, const MonomialMatrix&) = default;
};

// Ind_X^G psi on the basis t_k psi, t_k = b^{-k}: a acts diagonally by zeta_q^{u j^k},
// b shifts e_k to e_{k-1} and sends e_0 to zeta_{p^{n-r}}^w e_{p^r - 1}.
struct MonomialModel {
    GroupPtr group;
    PsiDescriptor psi;
    MonomialMatrix a, b;
    MonomialMatrix at(const GroupElement& g) const;  // a^x b^y
};

MonomialModel monomial_model(const GroupPtr& G, const PsiDescriptor& psi);
// Throws InputError unless tau is faithful.
MonomialModel monomial_model(const Character& tau);

}  // namespace schurgate
