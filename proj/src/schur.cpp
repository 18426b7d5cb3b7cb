#include "schurgate/schur.hpp"

#include <algorithm>
#include <set>

#include "schurgate/error.hpp"
#include "schurgate/monomial.hpp"
#include "schurgate/numtheory.hpp"

namespace schurgate {

using nt::u64;

std::string Place::str() const { return prime ? std::to_string(*prime) : "inf"; }

std::string to_string(IndexReason reason) {
    switch (reason) {
        case IndexReason::OddOrderNotSelfDual: return "odd_order_not_self_dual";
        case IndexReason::CoprimeToGroupOrder: return "coprime_to_group_order";
        case IndexReason::IrreducibleModP: return "irreducible_mod_p";
        case IndexReason::TameNormCriterion: return "tame_norm_criterion";
    }
    return "tame_norm_criterion";
}

std::string group_label(const MetacyclicGroup& G) {
    return "C" + std::to_string(G.q()) + "xC" + std::to_string(G.pn()) + "[j=" + std::to_string(G.j()) + "]";
}

TameNormDetails tame_norm_details(const MetacyclicGroup& G) {
    TameNormDetails t;
    t.d = G.pn() / G.pr();
    t.f = t.d == 1 ? 1 : nt::multiplicative_order(G.q() % t.d, t.d);
    try {
        t.N = nt::ipow(G.q(), static_cast<unsigned>(t.f)) - 1;
    } catch (const ArithmeticError&) {
    }
    // p | q - 1, so v_p(q^f - 1) = v_p(q - 1) + v_p(f)
    t.N_valuation = nt::valuation(G.q() - 1, G.p()) + nt::valuation(t.f, G.p());
    t.e = nt::ipow(G.p(), std::min(G.r(), t.N_valuation));
    return t;
}

std::uint64_t q_adic_index(const MetacyclicGroup& G) {
    auto t = tame_norm_details(G);
    // class order of zeta_d in the cyclic group k^x / (k^x)^{p^r} of order e,
    // which is e / gcd(e, N / d)
    const unsigned s = G.n() - G.r();
    return t.e / nt::ipow(G.p(), std::min(G.r(), t.N_valuation - s));
}

namespace {

void require_faithful(const Character& tau) {
    if (!is_faithful(tau)) throw InputError("character is not faithful; use the quotient group instead");
    if (inner_product(tau, tau) != Rational(1)) throw InputError("character is not irreducible");
}

LocalIndexReport local_unchecked(const Character& tau, const Place& place) {
    const auto& G = tau.group();
    LocalIndexReport rep;
    rep.place = place;
    if (place.is_infinite()) {
        if (tau == tau.conj()) throw InvariantViolation("faithful character of an odd-order group is self-dual");
        rep.reason = IndexReason::OddOrderNotSelfDual;
        return rep;
    }
    const u64 ell = *place.prime;
    if (!nt::is_prime(ell)) throw InputError("place " + std::to_string(ell) + " is not a prime");
    if (ell == G.p()) {
        // tau(a) has p^r distinct primitive q-th roots of unity as eigenvalues
        auto eig = monomial_model(tau).a.eigenvalues();
        std::set<RootOfUnity> distinct(eig.begin(), eig.end());
        bool ok = distinct.size() == G.pr() &&
                  std::all_of(eig.begin(), eig.end(), [&](const RootOfUnity& z) { return z.den == G.q(); });
        if (!ok) throw InvariantViolation("eigenvalues of tau(a) are not distinct primitive q-th roots");
        rep.reason = IndexReason::IrreducibleModP;
        return rep;
    }
    if (ell == G.q()) {
        rep.reason = IndexReason::TameNormCriterion;
        rep.details = tame_norm_details(G);
        rep.index = q_adic_index(G);
        rep.derived_beyond_paper = rep.index > 1;
        return rep;
    }
    rep.reason = IndexReason::CoprimeToGroupOrder;
    return rep;
}

}  // namespace

LocalIndexReport local_index(const Character& tau, const Place& place) {
    require_faithful(tau);
    return local_unchecked(tau, place);
}

GlobalIndexReport global_index(const Character& tau) {
    require_faithful(tau);
    const auto& G = tau.group();
    GlobalIndexReport rep;
    rep.group = group_label(G);
    rep.character = tau.id();
    const u64 coprime = 2;  // p and q are odd
    for (const auto& place : {Place::infinity(), Place::finite(G.p()), Place::finite(G.q()), Place::finite(coprime)}) {
        rep.local.push_back(local_unchecked(tau, place));
        rep.global = nt::lcm(rep.global, rep.local.back().index);
    }
    rep.divides_dimension = static_cast<u64>(tau.degree()) % rep.global == 0;
    rep.shortcut_trivial = (G.q() - 1) % G.pn() == 0;
    if (rep.shortcut_trivial != (rep.global == 1))
        throw InvariantViolation("Schur index disagrees with the p^n | q - 1 criterion");
    if (!rep.divides_dimension) throw InvariantViolation("Schur index does not divide the dimension");
    return rep;
}

bool norm_criterion(const Character& tau) {
    require_faithful(tau);
    return q_adic_index(tau.group()) == 1;
}

MultiplicityCheck multiplicity_divisibility_check(const Character& tau, const Character& rho) {
    for (const auto& v : rho.values())
        if (!v.is_rational()) throw InputError("not a rational character");
    MultiplicityCheck out;
    Rational m = inner_product(rho, tau);
    if (!m.small_integer()) throw InvariantViolation("multiplicity is not an integer");
    out.multiplicity = *m.small_integer();
    out.modulus = global_index(tau).global;
    out.divisible = out.multiplicity % static_cast<std::int64_t>(out.modulus) == 0;
    if (!out.divisible) throw InvariantViolation("multiplicity not divisible by the Schur index");
    return out;
}

}  // namespace schurgate
