#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "schurgate/characters.hpp"
#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"

using namespace schurgate;
using cd = std::complex<double>;

namespace {

cd root(std::uint64_t m, std::uint64_t k) {
    double t = 2 * std::numbers::pi * static_cast<double>(k % m) / static_cast<double>(m);
    return {std::cos(t), std::sin(t)};
}

cd numeric(const CyclotomicNumber& z) {
    cd s = 0;
    for (const auto& t : z.terms()) s += t.coeff.to_double() * root(z.conductor(), t.exp);
    return s;
}

// Ind_X^G psi at g by summing over all of G: |X|^-1 sum_{h : h g h^-1 in X} psi(h g h^-1).
cd brute_induced(const MetacyclicGroup& G, std::uint64_t u, std::uint64_t w, GroupElement g) {
    const std::uint64_t d = G.pn() / G.pr();
    cd s = 0;
    for (const auto& h : G.elements()) {
        GroupElement c = G.conjugate(g, h);
        if (c.y % G.pr() != 0) continue;
        s += root(G.q(), u * c.x) * root(d, w * (c.y / G.pr()));
    }
    return s / static_cast<double>(G.q() * d);
}

std::vector<cd> brute_values(const MetacyclicGroup& G, const Character& chi) {
    std::vector<cd> out;
    for (const auto& g : G.elements()) out.push_back(numeric(chi.at(g)));
    return out;
}

cd brute_inner(const std::vector<cd>& a, const std::vector<cd>& b) {
    cd s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s / static_cast<double>(a.size());
}

struct Case {
    std::uint64_t q, p;
    unsigned n;
    std::uint64_t j;
};

const Case small_cases[] = {{7, 3, 1, 2}, {7, 3, 2, 2}, {19, 3, 2, 7}, {19, 3, 3, 4}, {13, 3, 2, 3}, {37, 3, 3, 10}, {11, 5, 1, 3}, {31, 5, 2, 2}};

}  // namespace

TEST_CASE("table size and degrees") {
    for (auto [q, p, n, j] : small_cases) {
        auto G = make_group(q, p, n, j);
        auto T = irreducible_characters(G);
        CHECK(T.characters.size() == G->classes().size());
        std::int64_t sum = 0;
        for (const auto& chi : T.characters) {
            auto d = chi.degree();
            CHECK((d == 1 || d == static_cast<std::int64_t>(G->pr())));
            sum += d * d;
        }
        CHECK(sum == static_cast<std::int64_t>(G->order()));
    }
    auto G = make_group(19, 3, 4, 4);  // ord_19(4) = 9
    CHECK(G->r() == 2);
    auto T = irreducible_characters(G);
    CHECK(T.characters.size() == 99);
    std::int64_t sum = 0;
    for (const auto& chi : T.characters) sum += chi.degree() * chi.degree();
    CHECK(sum == 19 * 81);
}

TEST_CASE("table agrees with brute-force induction and is numerically orthonormal") {
    for (auto [q, p, n, j] : small_cases) {
        auto G = make_group(q, p, n, j);
        auto T = irreducible_characters(G);
        std::vector<std::vector<cd>> rows;
        for (const auto& chi : T.characters) rows.push_back(brute_values(*G, chi));
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = 0; b < rows.size(); ++b) {
                cd ip = brute_inner(rows[a], rows[b]);
                CHECK(std::abs(ip - cd(a == b ? 1.0 : 0.0)) < 1e-9);
            }
        for (const auto& chi : T.characters) {
            if (chi.degree() == 1) continue;
            auto psi = chi.provenance().psi;
            for (const auto& c : G->classes())
                CHECK(std::abs(numeric(chi.at(c.rep)) - brute_induced(*G, psi.u, psi.w, c.rep)) < 1e-9);
        }
    }
}

TEST_CASE("exact inner products") {
    for (auto [q, p, n, j] : small_cases) {
        auto G = make_group(q, p, n, j);
        auto T = irreducible_characters(G);
        for (std::size_t a = 0; a < T.characters.size(); ++a)
            for (std::size_t b = 0; b < T.characters.size(); ++b)
                CHECK(inner_product(T.characters[a], T.characters[b]) == Rational(a == b ? 1 : 0));
        auto reg = regular_character(G);
        for (const auto& chi : T.characters) CHECK(inner_product(reg, chi) == Rational(chi.degree()));
    }
    auto G = make_group(7, 3, 1, 2), H = make_group(7, 3, 2, 2);
    CHECK_THROWS_AS(inner_product(regular_character(G), regular_character(H)), InputError);
}

TEST_CASE("induce_from_X matches the table and Mackey") {
    auto G = make_group(19, 3, 3, 7);
    auto T = irreducible_characters(G);
    for (const auto& chi : T.characters) {
        if (chi.degree() == 1) continue;
        auto psi = chi.provenance().psi;
        Character ind = induce_from_X(G, psi);
        CHECK(ind == chi);
        CHECK(descriptor_of(chi) == psi);
        // conjugate descriptors give the same character
        CHECK(induce_from_X(G, {psi.u * G->j() % G->q(), psi.w}) == chi);
    }
}

TEST_CASE("faithful characters and fields") {
    for (auto [q, p, n, j] : small_cases) {
        auto G = make_group(q, p, n, j);
        auto T = irreducible_characters(G);
        auto F = faithful_characters(T);
        std::uint64_t expected = G->n() > G->r() ? (q - 1) * nt::ipow(p, n - G->r() - 1) * (p - 1) / G->pr()
                                                 : (q - 1) / G->pr();
        CHECK(F.size() == expected);
        auto K = formula_field(*G);
        for (const auto& tau : F) {
            auto field = character_field(tau);
            CHECK(field.conductor() == K.conductor());
            CHECK(field.degree() == K.degree());
            CHECK(field.stabilizer_at(q * G->pn()) == K.stabilizer_at(q * G->pn()));
        }
        for (const auto& chi : T.characters)
            if (chi.degree() == 1) CHECK(is_faithful(chi) == false);
    }
}

TEST_CASE("tensor decomposition") {
    for (auto [q, p, n, j] : small_cases) {
        auto G = make_group(q, p, n, j);
        for (const auto& tau : faithful_characters(irreducible_characters(G))) {
            auto d = tensor_decompose(tau);
            CHECK(tensor(d.tau_r, d.chi) == tau);
            CHECK(d.chi.degree() == 1);
            if (G->n() == G->r()) CHECK(d.chi_exponent == 0);
        }
    }
    auto G = make_group(7, 3, 1, 2);
    CHECK_THROWS_AS(tensor_decompose(linear_character(G, 1)), InputError);
}

TEST_CASE("values do not depend on j") {
    auto A = irreducible_characters(make_group(7, 3, 2, 2));
    auto B = irreducible_characters(make_group(7, 3, 2, 4));
    REQUIRE(A.characters.size() == B.characters.size());
    for (std::size_t i = 0; i < A.characters.size(); ++i)
        CHECK(A.characters[i].values() == B.characters[i].values());
}

TEST_CASE("quotient identity") {
    {
        auto G = make_group(7, 3, 1, 2);
        auto Q = quotient_identity(G, irreducible_characters(G));
        CHECK(Q.exponent == 3);
        CHECK(Q.faithful_count == 2);
        CHECK_FALSE(Q.equal);
        CHECK(Q.multiplicity == 2);
        CHECK(Q.equal_at_multiplicity);
    }
    for (auto [q, p, n, j] : small_cases) {
        auto G = make_group(q, p, n, j);
        auto Q = quotient_identity(G, irreducible_characters(G));
        CHECK(Q.equal_at_multiplicity);
        if (G->n() > G->r()) {
            CHECK(Q.equal);
            CHECK(Q.multiplicity == static_cast<std::int64_t>(G->pr()));
        } else {
            CHECK(Q.multiplicity == static_cast<std::int64_t>(G->pr() - G->pr() / p));
        }
    }
}

TEST_CASE("permutation characters count fixed cosets") {
    auto G = make_group(7, 3, 2, 2);
    for (const auto& H : G->tower_subgroups()) {
        auto pi = permutation_character(G, H);
        CHECK(pi.degree() == static_cast<std::int64_t>(H.index));
        // brute force: g fixes xH iff x^-1 g x in H
        for (const auto& c : G->classes()) {
            std::uint64_t fixed = 0;
            for (const auto& x : G->elements())
                if (G->contains(H, G->conjugate(c.rep, G->inverse(x)))) ++fixed;
            CHECK(pi.at(c.rep) == CyclotomicNumber(static_cast<std::int64_t>(fixed / H.order)));
        }
    }
}

TEST_CASE("column orthogonality") {
    for (auto [q, p, n, j] : small_cases) {
        auto G = make_group(q, p, n, j);
        auto T = irreducible_characters(G);
        const auto& cls = G->classes();
        std::vector<std::vector<cd>> cols(cls.size());
        for (std::size_t g = 0; g < cls.size(); ++g)
            for (const auto& chi : T.characters) cols[g].push_back(numeric(chi[g]));
        for (std::size_t g = 0; g < cls.size(); ++g)
            for (std::size_t h = 0; h < cls.size(); ++h) {
                cd sum = 0;
                for (std::size_t i = 0; i < T.characters.size(); ++i) sum += cols[g][i] * std::conj(cols[h][i]);
                double expect = g == h ? static_cast<double>(G->centralizer_order(g)) : 0.0;
                CHECK(std::abs(sum - expect) < 1e-8);
            }
    }
}

TEST_CASE("restriction to X is the sum of conjugates of psi") {
    auto G = make_group(19, 3, 3, 7);
    const std::uint64_t d = G->pn() / G->pr();
    for (const auto& tau : faithful_characters(irreducible_characters(G))) {
        auto psi = tau.provenance().psi;
        for (std::uint64_t x = 0; x < G->q(); ++x)
            for (std::uint64_t z = 0; z < d; ++z) {
                std::vector<std::pair<std::int64_t, Rational>> terms;
                for (std::uint64_t k = 0; k < G->pr(); ++k) {
                    std::uint64_t xk = x * G->j_power(k) % G->q();
                    terms.emplace_back(static_cast<std::int64_t>((psi.u * xk % G->q()) * d + (psi.w * z % d) * G->q()), Rational(1));
                }
                CHECK(tau.at({x, z * G->pr()}) == CyclotomicNumber::from_exponents(G->q() * d, terms));
            }
    }
}

TEST_CASE("permutation characters decompose with non-negative integer multiplicities") {
    for (auto [q, p, n, j] : small_cases) {
        auto G = make_group(q, p, n, j);
        auto T = irreducible_characters(G);
        for (const auto& H : G->tower_subgroups()) {
            auto pi = permutation_character(G, H);
            for (const auto& chi : T.characters) {
                auto m = inner_product(pi, chi);
                CHECK(m.small_integer().has_value());
                CHECK_FALSE(m < Rational(0));
            }
        }
        auto indX = induce_from_X(G, {0, 0});
        for (const auto& tau : faithful_characters(T)) CHECK(inner_product(indX, tau) == Rational(0));
        CHECK(inner_product(indX, T.characters[0]) == Rational(1));
    }
}

TEST_CASE("worked examples") {
    auto G = make_group(7, 3, 1, 2);
    auto T = irreducible_characters(G);
    CHECK(T.characters.size() == 5);
    auto tau = induce_from_X(G, {1, 0});
    CHECK(tau.at({1, 0}) == CyclotomicNumber::from_exponents(7, {{1, Rational(1)}, {2, Rational(1)}, {4, Rational(1)}}));
    CHECK(character_field(tau).degree() == 2);
    auto G9 = make_group(7, 3, 2, 2);
    auto F9 = faithful_characters(irreducible_characters(G9));
    CHECK(F9.size() == 4);
    CHECK(character_field(F9[0]).degree() == 4);
    CHECK(induce_from_X(G9, {1, 1}).at({0, 3}) == CyclotomicNumber(3) * CyclotomicNumber::zeta(3, 1));
    CHECK(character_field(linear_character(G9, 1)).degree() == 6);
    auto Q = quotient_identity(G9, irreducible_characters(G9));
    CHECK(Q.equal);
    CHECK(Q.rhs.degree() == 36);
}
