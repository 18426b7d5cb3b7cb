#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "schurgate/cyclotomic.hpp"
#include "schurgate/group.hpp"

namespace schurgate {

using GroupPtr = std::shared_ptr<const MetacyclicGroup>;
GroupPtr make_group(std::uint64_t q, std::uint64_t p, unsigned n, std::uint64_t j);

// psi(a^x b^{p^r z}) = zeta_q^{u x} zeta_{p^{n-r}}^{w z} on X = <a, b^{p^r}>.
struct PsiDescriptor {
    std::uint64_t u = 0;  // mod q
    std::uint64_t w = 0;  // mod p^{n-r}
    friend bool operator==(const PsiDescriptor&, const PsiDescriptor&) = default;
};

struct Provenance {
    enum class Kind { OneDimensional, LiftedFromQuotient, Induced, Permutation, Regular, Composite };
    Kind kind = Kind::Composite;
    std::uint64_t exponent = 0;  // OneDimensional: chi(b) = zeta_{p^n}^exponent
    unsigned level = 0;          // LiftedFromQuotient: inflated from C_q x| C_{p^level}
    PsiDescriptor psi;           // LiftedFromQuotient / Induced: descriptor on X of the full group
    std::string label;           // Permutation / Composite
};

std::string to_string(Provenance::Kind kind);

// Class function with cyclotomic values, indexed like group().classes().
class Character {
public:
    Character(GroupPtr group, std::vector<CyclotomicNumber> values, Provenance provenance);

    const MetacyclicGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    const std::vector<CyclotomicNumber>& values() const { return values_; }
    const CyclotomicNumber& operator[](std::size_t cls) const { return values_[cls]; }
    CyclotomicNumber at(const GroupElement& g) const { return values_[group_->class_index(g)]; }
    const Provenance& provenance() const { return provenance_; }
    // Value at the identity as an integer; throws if it is not one.
    std::int64_t degree() const;
    std::string id() const;

    Character conj() const;
    Character galois(std::int64_t k) const;

    friend bool operator==(const Character& a, const Character& b);  // value-wise, same group

private:
    GroupPtr group_;
    std::vector<CyclotomicNumber> values_;
    Provenance provenance_;
};

// Integer combination of characters of one group.
class VirtualCharacter {
public:
    VirtualCharacter() = default;
    explicit VirtualCharacter(GroupPtr group) : group_(std::move(group)) {}
    void add(std::int64_t coefficient, const Character& chi);

    const std::vector<std::pair<std::int64_t, Character>>& terms() const { return terms_; }
    std::vector<CyclotomicNumber> values() const;
    std::int64_t degree() const;
    friend bool operator==(const VirtualCharacter& a, const VirtualCharacter& b);  // value-wise

private:
    GroupPtr group_;
    std::vector<std::pair<std::int64_t, Character>> terms_;
};

struct CharacterTable {
    GroupPtr group;
    std::vector<Character> characters;
};

// Linear characters by exponent, then the p^r-dimensional characters by the minimal
// (u, w) of their X-descriptor orbit. Values do not depend on the choice of j.
CharacterTable irreducible_characters(const GroupPtr& G);

Character linear_character(const GroupPtr& G, std::uint64_t e);
Character induce_from_X(const GroupPtr& G, const PsiDescriptor& psi);
Character regular_character(const GroupPtr& G);
Character permutation_character(const GroupPtr& G, const Subgroup& H);
Character tensor(const Character& a, const Character& b);

// <a, b> = |G|^-1 sum_g a(g) conj(b(g)); throws if the groups differ or the value is not rational.
Rational inner_product(const Character& a, const Character& b);
bool is_faithful(const Character& chi);
std::vector<Character> faithful_characters(const CharacterTable& table);

struct TensorDecomposition {
    Character tau_r;  // inflated from a faithful irreducible of C_q x| C_{p^r}
    Character chi;    // linear
    std::uint64_t chi_exponent = 0;
};
TensorDecomposition tensor_decompose(const Character& tau);

// (u, w) of a faithful irreducible, from provenance or by matching values.
PsiDescriptor descriptor_of(const Character& tau);

AbelianField character_field(const Character& chi);
// Q(zeta_{p^{n-r}}, sum_{t in H} zeta_q^t).
AbelianField formula_field(const MetacyclicGroup& G);

struct QuotientIdentity {
    VirtualCharacter lhs;  // perm(F_{p^n}) + perm(K_{p^{n-1}}) - perm(K_{p^n}) - perm(F_{p^{n-1}})
    VirtualCharacter rhs;  // exponent * sum of faithful characters
    std::int64_t exponent = 0;      // p^r
    bool equal = false;
    std::int64_t multiplicity = 0;  // <lhs, tau> for a faithful tau
    bool equal_at_multiplicity = false;
    std::size_t faithful_count = 0;
};
QuotientIdentity quotient_identity(const GroupPtr& G, const CharacterTable& table);

}  // namespace schurgate
