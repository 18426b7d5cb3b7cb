#include "schurgate/frobenius.hpp"

#include <algorithm>
#include <memory>

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"

namespace schurgate {

using nt::u64;

u64 cyclotomic_component(const MetacyclicGroup& G, u64 v) {
    const u64 p = G.p(), pn = G.pn(), mod = pn * p;
    if (v % p == 0) throw InputError("prime " + std::to_string(v) + " is ramified in the cyclotomic layer");
    // strip the Teichmueller part: v^{1 - p^n} lies in 1 + pZ
    u64 teich = nt::powmod(v % mod, pn, mod);
    u64 u = nt::mulmod(v % mod, nt::inverse_mod(teich, mod), mod);
    u64 g = (1 + p) % mod, x = 1;
    for (u64 y = 0; y < pn; ++y) {
        if (x == u) return y;
        x = nt::mulmod(x, g, mod);
    }
    throw InvariantViolation("no logarithm in 1 + pZ");
}

namespace {

[[noreturn]] void unexpected() { throw InputError("polynomial does not define expected extension"); }

}  // namespace

FrobeniusDatum frobenius_datum(const IntPoly& f, const MetacyclicGroup& G, u64 v) {
    if (f.degree() != G.q() || !f.monic()) throw InputError("field polynomial must be monic of degree q");
    if (!nt::is_prime(v)) throw InputError(std::to_string(v) + " is not prime");
    if (v == G.p() || v == G.q()) throw InputError("prime " + std::to_string(v) + " is ramified");
    // index divisors are skipped too: the factorization pattern no longer reads off Frobenius
    if (mpz_divisible_ui_p(f.discriminant().get_mpz_t(), v))
        throw InputError("prime " + std::to_string(v) + " divides the polynomial discriminant");
    FrobeniusDatum d;
    d.v = v;
    d.pattern = factorization_pattern(f, v);
    d.cyclotomic_component = cyclotomic_component(G, v);
    const u64 y = d.cyclotomic_component, q = G.q();
    const bool all_linear = std::all_of(d.pattern.begin(), d.pattern.end(), [](unsigned k) { return k == 1; });
    // on the cosets of <b>, a^x b^y acts as c -> x + j^y c
    if (y % G.pr() != 0) {
        u64 len = nt::multiplicative_order(G.j_power(y), q);
        std::vector<unsigned> expect{1};
        expect.insert(expect.end(), (q - 1) / len, static_cast<unsigned>(len));
        std::sort(expect.begin(), expect.end());
        if (d.pattern != expect) unexpected();
        d.cls = G.class_index({0, y});
    } else if (all_linear) {
        d.cls = G.class_index({0, y});
    } else if (d.pattern == std::vector<unsigned>{static_cast<unsigned>(q)}) {
        for (u64 x = 1; x < q; ++x)
            if (G.orbit_min(x) == x) d.candidates.push_back(G.class_index({x, y}));
        if (d.candidates.size() == 1) d.cls = d.candidates.front();
    } else {
        unexpected();
    }
    if (d.cls) d.candidates = {*d.cls};
    d.order_in_G = G.classes()[d.candidates.front()].order;
    return d;
}

FrobeniusSource field_frobenius_source(const IntPoly& f, const MetacyclicGroup& G) {
    auto disc = std::make_shared<mpz_class>(f.discriminant());
    auto group = std::make_shared<MetacyclicGroup>(G);
    return [f, disc, group](u64 v) -> std::optional<FrobeniusDatum> {
        if (v == group->p() || v == group->q() || mpz_divisible_ui_p(disc->get_mpz_t(), v)) return std::nullopt;
        return frobenius_datum(f, *group, v);
    };
}

}  // namespace schurgate
