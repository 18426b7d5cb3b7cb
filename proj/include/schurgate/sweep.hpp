#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "schurgate/characters.hpp"

namespace schurgate {

// One isomorphism type per (q, p, n, r) with the canonical j, or every admissible j.
std::vector<MetacyclicParams> sweep_parameters(std::uint64_t max_order, bool every_j = false);

// Orthogonality of a full table, proved exactly without multiplying out every pair.
// The table is first shown to satisfy sigma_k(chi(g)) = chi(g^k) exactly for generators k of
// (Z/qp^n)^x, and to be permuted by that action. Every Gram entry sum |C| chi_i conj chi_j is
// then a rational algebraic integer, constant on Galois orbits of pairs, so a floating-point
// evaluation on one pair per orbit within 1/4 of the target decides it exactly. Columns alike.
struct TableCertificate {
    bool count_matches = false;       // #irreducibles = #classes
    bool degree_sum = false;          // sum deg^2 = |G|
    bool power_maps = false;          // sigma_k chi(g) = chi(g^k), exact
    bool galois_closed = false;       // sigma_k permutes the rows
    bool rows_orthogonal = false;
    bool columns_orthogonal = false;
    std::size_t row_orbits = 0, class_orbits = 0;
    std::vector<std::size_t> row_orbit;  // smallest row index in each row's Galois orbit
    double row_error = 0, column_error = 0;  // largest floating deviation seen
    bool ok() const {
        return count_matches && degree_sum && power_maps && galois_closed && rows_orthogonal && columns_orthogonal;
    }
};
TableCertificate certify_table(const CharacterTable& table);

// Res_X Ind_X^G psi equals the sum of the b-conjugates of psi on every class of X, and the
// induced character vanishes off X. Exact.
bool mackey_holds(const Character& induced, const PsiDescriptor& psi);

// Per-character checks (Mackey, fields, tensors, divisibility) are Galois-equivariant, so once the
// table is certified they run on the first and last member of every Galois orbit of rows; without
// a certificate, or with exhaustive set, on every row.
struct SweepOptions {
    bool table = true;        // certify_table
    bool mackey = true;       // every induced row
    bool fields = true;       // character_field == formula_field for faithful rows
    bool tensors = true;      // tensor_decompose round trip for faithful rows
    bool divisibility = true; // tower permutation multiplicities against the Schur index
    bool exhaustive = false;
};

struct SweepRecord {
    MetacyclicParams params;
    std::string label;
    std::size_t classes = 0;
    std::size_t faithful = 0;
    std::uint64_t faithful_formula = 0;
    std::uint64_t schur_index = 0;
    bool index_rule = false;  // 1 iff p^n | q - 1, else p^s with 1 <= s <= r
    TableCertificate certificate;
    bool mackey = true, fields = true, tensors = true, divisibility = true;
    std::size_t checked_rows = 0;  // rows evaluated directly by the per-character checks
    std::vector<std::string> failures;
    double seconds = 0;
    bool ok() const { return failures.empty(); }
};

SweepRecord sweep_group(const MetacyclicParams& params, const SweepOptions& options);

// Runs sweep_group over the parameters on up to `threads` workers; the result order matches
// the input order regardless of scheduling.
std::vector<SweepRecord> run_sweep(const std::vector<MetacyclicParams>& params, const SweepOptions& options,
                                   unsigned threads, const std::function<void(const SweepRecord&)>& progress = {});

}  // namespace schurgate
