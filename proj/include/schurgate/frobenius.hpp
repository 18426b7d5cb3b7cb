#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "schurgate/group.hpp"
#include "schurgate/polymod.hpp"

namespace schurgate {

// Frobenius at an unramified prime v in Gal(F_{p^n}/Q) = C_q x| C_{p^n}, where F_1 is cut out by
// a degree-q polynomial and the C_{p^n} quotient is the degree-p^n subfield of Q(zeta_{p^{n+1}}).
struct FrobeniusDatum {
    std::uint64_t v = 0;
    std::uint64_t order_in_G = 1;
    std::uint64_t cyclotomic_component = 0;  // y with Frob_v = a^x b^y
    std::vector<unsigned> pattern;           // factor degrees of the polynomial mod v
    std::optional<std::size_t> cls;          // present only when pinned down
    std::vector<std::size_t> candidates;     // classes compatible with the data (one if cls is set)
    bool ambiguous() const { return !cls; }
};

// b corresponds to the automorphism zeta -> zeta^{1+p}; y = log_{1+p} of the 1 + pZ part of v mod p^{n+1}.
std::uint64_t cyclotomic_component(const MetacyclicGroup& G, std::uint64_t v);

// Throws InputError for ramified v and "polynomial does not define expected extension"
// when the splitting pattern is incompatible with the group.
FrobeniusDatum frobenius_datum(const IntPoly& f, const MetacyclicGroup& G, std::uint64_t v);

// v -> datum, or nullopt when v is ramified.
using FrobeniusSource = std::function<std::optional<FrobeniusDatum>(std::uint64_t v)>;
FrobeniusSource field_frobenius_source(const IntPoly& f, const MetacyclicGroup& G);

}  // namespace schurgate
