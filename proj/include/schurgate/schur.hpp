#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schurgate/characters.hpp"

namespace schurgate {

// A place of Q: the real place or a finite prime.
struct Place {
    std::optional<std::uint64_t> prime;  // empty for infinity
    static Place infinity() { return {}; }
    static Place finite(std::uint64_t ell) { return {ell}; }
    bool is_infinite() const { return !prime; }
    std::string str() const;
    friend bool operator==(const Place&, const Place&) = default;
};

enum class IndexReason { OddOrderNotSelfDual, CoprimeToGroupOrder, IrreducibleModP, TameNormCriterion };
std::string to_string(IndexReason reason);

// Integer data behind the index at q.
struct TameNormDetails {
    std::uint64_t d = 1;  // p^{n-r}
    std::uint64_t f = 1;  // order of q mod d
    std::optional<std::uint64_t> N;  // q^f - 1, when it fits in 64 bits
    unsigned N_valuation = 0;         // v_p(q^f - 1)
    std::uint64_t e = 1;              // gcd(p^r, N)
};

struct LocalIndexReport {
    Place place;
    std::uint64_t index = 1;
    IndexReason reason = IndexReason::CoprimeToGroupOrder;
    std::optional<TameNormDetails> details;  // only at q
    bool derived_beyond_paper = false;       // exact value past the proven p | m bound
};

struct GlobalIndexReport {
    std::string group;
    std::string character;
    std::vector<LocalIndexReport> local;
    std::uint64_t global = 1;
    bool divides_dimension = true;
    bool shortcut_trivial = false;  // p^n | q - 1
};

// Index at q from (q, p, n, r) alone.
TameNormDetails tame_norm_details(const MetacyclicGroup& G);
std::uint64_t q_adic_index(const MetacyclicGroup& G);

// tau must be a faithful irreducible of its group; otherwise InputError.
LocalIndexReport local_index(const Character& tau, const Place& place);
GlobalIndexReport global_index(const Character& tau);
bool norm_criterion(const Character& tau);

struct MultiplicityCheck {
    std::int64_t multiplicity = 0;
    std::uint64_t modulus = 1;
    bool divisible = true;
};
// rho must have rational values ("not a rational character" otherwise).
MultiplicityCheck multiplicity_divisibility_check(const Character& tau, const Character& rho);

std::string group_label(const MetacyclicGroup& G);

}  // namespace schurgate
