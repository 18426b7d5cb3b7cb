#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schurgate/characters.hpp"

namespace schurgate {

inline const std::string kAssumeBSD = "BSD-Deligne-Gross";
inline const std::string kAssumeSha = "Sha-finite";

// A conditional claim; `assuming` is never empty.
struct Statement {
    std::string key;
    std::string claim;
    std::vector<std::string> assuming;
    std::optional<std::int64_t> modulus;
};

struct PredictionReport {
    std::string group;
    std::string character;
    std::uint64_t q = 0, p = 0;
    unsigned n = 0, r = 0;
    std::uint64_t schur_modulus = 1;
    bool forced = false;             // p^n does not divide q - 1
    std::uint64_t tower_modulus = 0;  // p^{n-r} (p-1) (q-1)
    std::uint64_t faithful_count = 0;
    std::int64_t identity_exponent = 0;  // multiplicity of each faithful tau in the quotient identity
    std::uint64_t identity_modulus = 0;  // identity_exponent * faithful_count * schur_modulus
    std::uint64_t psi_order = 0;         // order of psi on X, q p^{n-r}
    std::vector<Statement> statements;
    std::vector<std::string> notes;
};

std::uint64_t tower_modulus(std::uint64_t q, std::uint64_t p, unsigned n, unsigned r);
// (q-1) p^{n-r-1} (p-1) / p^r for n > r, (q-1) / p^r for n = r.
std::uint64_t faithful_count_formula(std::uint64_t q, std::uint64_t p, unsigned n, unsigned r);
// p^r for n > r, p^r - p^{r-1} for n = r.
std::int64_t identity_exponent_formula(std::uint64_t p, unsigned n, unsigned r);

PredictionReport prediction_report(const Character& tau);
// Uses the first faithful character of the table.
PredictionReport prediction_report(const GroupPtr& G);

}  // namespace schurgate
