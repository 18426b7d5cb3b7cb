#include "schurgate/predictions.hpp"

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"
#include "schurgate/schur.hpp"

namespace schurgate {

using nt::u64;

u64 tower_modulus(u64 q, u64 p, unsigned n, unsigned r) { return nt::ipow(p, n - r) * (p - 1) * (q - 1); }

u64 faithful_count_formula(u64 q, u64 p, unsigned n, unsigned r) {
    const u64 pr = nt::ipow(p, r);
    if (n == r) return (q - 1) / pr;
    return (q - 1) * nt::ipow(p, n - r - 1) * (p - 1) / pr;
}

std::int64_t identity_exponent_formula(u64 p, unsigned n, unsigned r) {
    const auto pr = static_cast<std::int64_t>(nt::ipow(p, r));
    return n > r ? pr : pr - pr / static_cast<std::int64_t>(p);
}

PredictionReport prediction_report(const Character& tau) {
    const auto& G = tau.group();
    auto index = global_index(tau);
    PredictionReport rep;
    rep.group = group_label(G);
    rep.character = tau.id();
    rep.q = G.q();
    rep.p = G.p();
    rep.n = G.n();
    rep.r = G.r();
    rep.schur_modulus = index.global;
    rep.forced = (G.q() - 1) % G.pn() != 0;
    rep.tower_modulus = tower_modulus(G.q(), G.p(), G.n(), G.r());
    rep.faithful_count = faithful_count_formula(G.q(), G.p(), G.n(), G.r());
    rep.identity_exponent = identity_exponent_formula(G.p(), G.n(), G.r());
    rep.identity_modulus = static_cast<u64>(rep.identity_exponent) * rep.faithful_count * rep.schur_modulus;
    rep.psi_order = G.q() * (G.pn() / G.pr());
    const auto m = static_cast<std::int64_t>(rep.schur_modulus);
    const std::string mod = std::to_string(m);
    const std::string F = "F_" + std::to_string(G.pn());

    if (!rep.forced) {
        rep.statements.push_back({"no_forced_divisibility",
                                  "no forced divisibility: p^n divides q-1, so tau is realizable over its character field",
                                  {kAssumeBSD}, 1});
    } else {
        rep.statements.push_back({"rank_divisibility", "ord_{s=1} L(E,tau,s) = 0 mod " + mod, {kAssumeBSD}, m});
        rep.statements.push_back({"selmer_multiplicity",
                                  "<X_l(E/" + F + "), tau> = 0 mod " + mod + " for every prime l",
                                  {kAssumeSha}, m});
        rep.statements.push_back({"galois_conjugates",
                                  "all " + std::to_string(rep.faithful_count) +
                                      " faithful tau share ord_{s=1} L(E,tau,s), being Galois conjugate",
                                  {kAssumeBSD}, std::nullopt});
        rep.statements.push_back({"hilbert_reformulation",
                                  "L(E,tau,s) = L(f_E,psi,s) with psi of order " + std::to_string(rep.psi_order) +
                                      " over K_" + std::to_string(G.pr()) + ", so ord_{s=1} L(f_E,psi,s) = 0 mod " + mod,
                                  {kAssumeBSD}, m});
        rep.statements.push_back({"tower_order_of_vanishing",
                                  "if L(E/K,1) != 0 for all proper subfields K of " + F + ", then ord_{s=1} L(E/" + F +
                                      ",s) = 0 mod " + std::to_string(rep.tower_modulus),
                                  {kAssumeBSD}, static_cast<std::int64_t>(rep.tower_modulus)});
        rep.statements.push_back({"quotient_identity",
                                  "the quotient L(E/F_{p^n})L(E/K_{p^(n-1)})/(L(E/K_{p^n})L(E/F_{p^(n-1)})) vanishes at s=1 to order = 0 mod " +
                                      std::to_string(rep.identity_modulus),
                                  {kAssumeBSD}, static_cast<std::int64_t>(rep.identity_modulus)});
    }
    rep.notes.push_back("bad and ramified primes contribute trivial Euler factors");
    if (rep.forced) rep.notes.push_back("the modulus is the exact local Schur index at q, derived beyond the proven bound p | m");
    return rep;
}

PredictionReport prediction_report(const GroupPtr& G) {
    const u64 d = G->pn() / G->pr();
    return prediction_report(induce_from_X(G, {1, d == 1 ? 0 : 1}));
}

}  // namespace schurgate
