#include "schurgate/characters.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <unordered_map>

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"

namespace schurgate {

using nt::u64;

GroupPtr make_group(u64 q, u64 p, unsigned n, u64 j) { return std::make_shared<const MetacyclicGroup>(q, p, n, j); }

std::string to_string(Provenance::Kind kind) {
    switch (kind) {
        case Provenance::Kind::OneDimensional: return "one_dimensional";
        case Provenance::Kind::LiftedFromQuotient: return "lifted_from_quotient";
        case Provenance::Kind::Induced: return "induced";
        case Provenance::Kind::Permutation: return "permutation";
        case Provenance::Kind::Regular: return "regular";
        case Provenance::Kind::Composite: return "composite";
    }
    return "composite";
}

Character::Character(GroupPtr group, std::vector<CyclotomicNumber> values, Provenance provenance)
    : group_(std::move(group)), values_(std::move(values)), provenance_(std::move(provenance)) {
    if (!group_) throw InputError("character without a group");
    if (values_.size() != group_->classes().size()) throw InputError("character length does not match class count");
}

std::int64_t Character::degree() const {
    auto v = values_[0].rational_value();
    if (!v || !v->small_integer()) throw InvariantViolation("character degree is not an integer");
    return *v->small_integer();
}

std::string Character::id() const {
    switch (provenance_.kind) {
        case Provenance::Kind::OneDimensional: return "chi_" + std::to_string(provenance_.exponent);
        case Provenance::Kind::LiftedFromQuotient:
        case Provenance::Kind::Induced:
            return "tau_" + std::to_string(provenance_.psi.u) + "_" + std::to_string(provenance_.psi.w);
        case Provenance::Kind::Regular: return "regular";
        case Provenance::Kind::Permutation: return "perm_" + provenance_.label;
        case Provenance::Kind::Composite: return provenance_.label.empty() ? "composite" : provenance_.label;
    }
    return "composite";
}

Character Character::conj() const { return galois(-1); }

Character Character::galois(std::int64_t k) const {
    std::vector<CyclotomicNumber> out;
    out.reserve(values_.size());
    std::unordered_map<const void*, CyclotomicNumber> memo;
    for (const auto& v : values_) {
        auto it = memo.find(v.identity());
        if (it == memo.end()) it = memo.emplace(v.identity(), v.galois(k)).first;
        out.push_back(it->second);
    }
    Provenance p;
    p.label = "galois(" + id() + "," + std::to_string(k) + ")";
    return Character(group_, std::move(out), p);
}

namespace {

bool same_group(const MetacyclicGroup& a, const MetacyclicGroup& b) {
    return &a == &b || (a.q() == b.q() && a.p() == b.p() && a.n() == b.n() && a.j() == b.j());
}

}  // namespace

bool operator==(const Character& a, const Character& b) {
    return same_group(a.group(), b.group()) && a.values_ == b.values_;
}

void VirtualCharacter::add(std::int64_t coefficient, const Character& chi) {
    if (!group_) group_ = chi.group_ptr();
    if (!same_group(*group_, chi.group())) throw InputError("virtual character terms from different groups");
    terms_.emplace_back(coefficient, chi);
}

std::vector<CyclotomicNumber> VirtualCharacter::values() const {
    if (!group_) return {};
    std::vector<CyclotomicNumber> out(group_->classes().size());
    for (std::size_t c = 0; c < out.size(); ++c) {
        CyclotomicSum sum;
        for (const auto& [k, chi] : terms_) sum.add(chi[c], Rational(k));
        out[c] = sum.value();
    }
    return out;
}

std::int64_t VirtualCharacter::degree() const {
    std::int64_t d = 0;
    for (const auto& [k, chi] : terms_) d += k * chi.degree();
    return d;
}

bool operator==(const VirtualCharacter& a, const VirtualCharacter& b) { return a.values() == b.values(); }

namespace {

// Pool of the few distinct values a table uses, addressed by small integer ids.
class ValuePool {
public:
    explicit ValuePool(const MetacyclicGroup& G)
        : G_(G), d_(G.pn() / G.pr()), linear_(G.pn(), kUnset), mixed_(G.q() * (G.pn() / G.pr()), kUnset) {
        pool_.push_back(CyclotomicNumber());
    }

    static constexpr std::uint32_t kZero = 0;

    std::uint32_t linear(u64 t) {
        t %= G_.pn();
        if (linear_[t] == kUnset) linear_[t] = push(CyclotomicNumber::zeta(G_.pn(), static_cast<std::int64_t>(t)));
        return linear_[t];
    }

    // zeta_{p^{n-r}}^e * sum_{h in H} zeta_q^{c h}, c an orbit minimum (or 0)
    std::uint32_t mixed(u64 c, u64 e) {
        e %= d_;
        u64 key = c * d_ + e;
        if (mixed_[key] == kUnset) {
            std::vector<std::pair<std::int64_t, Rational>> terms;
            for (u64 h : G_.H()) terms.emplace_back(static_cast<std::int64_t>(c * h % G_.q()), Rational(1));
            CyclotomicNumber eta = CyclotomicNumber::from_exponents(G_.q(), terms);
            mixed_[key] = push(eta * CyclotomicNumber::zeta(d_, static_cast<std::int64_t>(e)));
        }
        return mixed_[key];
    }

    const CyclotomicNumber& operator[](std::uint32_t id) const { return pool_[id]; }

private:
    static constexpr std::uint32_t kUnset = ~0u;
    std::uint32_t push(CyclotomicNumber v) {
        pool_.push_back(std::move(v));
        return static_cast<std::uint32_t>(pool_.size() - 1);
    }

    const MetacyclicGroup& G_;
    u64 d_;
    std::vector<std::uint32_t> linear_, mixed_;
    std::vector<CyclotomicNumber> pool_;
};

struct Row {
    PsiDescriptor psi;  // descriptor on X of the top group
    unsigned level = 0;
    std::vector<std::uint32_t> ids;
};

// Faithful irreducibles of Gm = C_q x| C_{p^m}, induced from X of Gm.
std::vector<Row> faithful_rows(const MetacyclicGroup& Gm, unsigned top_n, ValuePool& pool) {
    const u64 q = Gm.q(), p = Gm.p(), pr = Gm.pr();
    const u64 dm = Gm.pn() / pr;  // p^{m-r}
    const u64 lift = nt::ipow(p, top_n - Gm.n());
    std::vector<Row> rows;
    for (u64 u = 1; u < q; ++u) {
        if (Gm.orbit_min(u) != u) continue;
        for (u64 w = 0; w < dm; ++w) {
            if (dm > 1 && w % p == 0) continue;
            Row row;
            row.psi = {u, w * lift};
            row.level = Gm.n();
            row.ids.reserve(Gm.classes().size());
            for (const auto& c : Gm.classes()) {
                if (c.rep.y % pr != 0) {
                    row.ids.push_back(ValuePool::kZero);
                    continue;
                }
                u64 z = c.rep.y / pr;
                u64 x = c.rep.x;
                u64 orbit = x == 0 ? 0 : Gm.orbit_min(u * x % q);
                row.ids.push_back(pool.mixed(orbit, (w * z % dm) * lift));
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// Non-linear irreducibles of Gm: the faithful ones plus those inflated from C_q x| C_{p^{m-1}}.
std::vector<Row> nonlinear_rows(const MetacyclicGroup& Gm, unsigned top_n, ValuePool& pool) {
    std::vector<Row> rows = faithful_rows(Gm, top_n, pool);
    if (Gm.n() > Gm.r()) {
        MetacyclicGroup Q(Gm.q(), Gm.p(), Gm.n() - 1, Gm.j());
        std::vector<Row> lower = nonlinear_rows(Q, top_n, pool);
        std::vector<std::size_t> to_quotient;
        to_quotient.reserve(Gm.classes().size());
        for (const auto& c : Gm.classes()) to_quotient.push_back(Q.class_index({c.rep.x, c.rep.y % Q.pn()}));
        for (auto& row : lower) {
            Row lifted;
            lifted.psi = row.psi;
            lifted.level = row.level;
            lifted.ids.reserve(to_quotient.size());
            for (std::size_t idx : to_quotient) lifted.ids.push_back(row.ids[idx]);
            rows.push_back(std::move(lifted));
        }
    }
    return rows;
}

}  // namespace

CharacterTable irreducible_characters(const GroupPtr& G) {
    CharacterTable table;
    table.group = G;
    ValuePool pool(*G);
    const auto& classes = G->classes();
    for (u64 e = 0; e < G->pn(); ++e) {
        std::vector<CyclotomicNumber> values;
        values.reserve(classes.size());
        for (const auto& c : classes) values.push_back(pool[pool.linear(e * c.rep.y)]);
        Provenance prov;
        prov.kind = Provenance::Kind::OneDimensional;
        prov.exponent = e;
        table.characters.emplace_back(G, std::move(values), prov);
    }
    std::vector<Row> rows = nonlinear_rows(*G, G->n(), pool);
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::pair{a.psi.u, a.psi.w} < std::pair{b.psi.u, b.psi.w};
    });
    for (const auto& row : rows) {
        std::vector<CyclotomicNumber> values;
        values.reserve(row.ids.size());
        for (auto id : row.ids) values.push_back(pool[id]);
        Provenance prov;
        prov.kind = row.level == G->n() ? Provenance::Kind::Induced : Provenance::Kind::LiftedFromQuotient;
        prov.level = row.level;
        prov.psi = row.psi;
        table.characters.emplace_back(G, std::move(values), prov);
    }
    return table;
}

Character linear_character(const GroupPtr& G, u64 e) {
    e %= G->pn();
    std::vector<CyclotomicNumber> values;
    std::unordered_map<u64, CyclotomicNumber> memo;
    for (const auto& c : G->classes()) {
        u64 t = e * c.rep.y % G->pn();
        auto it = memo.find(t);
        if (it == memo.end()) it = memo.emplace(t, CyclotomicNumber::zeta(G->pn(), static_cast<std::int64_t>(t))).first;
        values.push_back(it->second);
    }
    Provenance prov;
    prov.kind = Provenance::Kind::OneDimensional;
    prov.exponent = e;
    return Character(G, std::move(values), prov);
}

Character induce_from_X(const GroupPtr& G, const PsiDescriptor& psi_in) {
    const u64 q = G->q(), pr = G->pr();
    const u64 d = G->pn() / pr;
    const PsiDescriptor psi{psi_in.u % q, psi_in.w % d};
    const u64 N = q * d;
    std::vector<CyclotomicNumber> values;
    values.reserve(G->classes().size());
    for (const auto& c : G->classes()) {
        if (c.rep.y % pr != 0) {
            values.emplace_back();
            continue;
        }
        // Ind psi(g) = sum over coset representatives b^k of psi(b^k g b^-k)
        std::vector<std::pair<std::int64_t, Rational>> terms;
        terms.reserve(pr);
        for (u64 k = 0; k < pr; ++k) {
            GroupElement h = G->conjugate(c.rep, {0, k});
            u64 z = h.y / pr;
            u64 e = (psi.u * h.x % q) * d + (psi.w * z % d) * q;
            terms.emplace_back(static_cast<std::int64_t>(e % N), Rational(1));
        }
        values.push_back(CyclotomicNumber::from_exponents(N, terms));
    }
    Provenance prov;
    prov.kind = Provenance::Kind::Induced;
    prov.psi = psi;
    prov.level = G->n();
    return Character(G, std::move(values), prov);
}

Character regular_character(const GroupPtr& G) {
    std::vector<CyclotomicNumber> values(G->classes().size());
    values[0] = CyclotomicNumber(static_cast<std::int64_t>(G->order()));
    Provenance prov;
    prov.kind = Provenance::Kind::Regular;
    return Character(G, std::move(values), prov);
}

Character permutation_character(const GroupPtr& G, const Subgroup& H) {
    // fixed cosets of g on G/H: |C_G(g)| * |class(g) meet H| / |H|
    std::vector<CyclotomicNumber> values;
    values.reserve(G->classes().size());
    for (std::size_t c = 0; c < G->classes().size(); ++c) {
        u64 meets = G->class_meets(H, c);
        u64 num = G->centralizer_order(c) * meets;
        if (num % H.order != 0) throw InvariantViolation("permutation character value is not an integer");
        values.emplace_back(static_cast<std::int64_t>(num / H.order));
    }
    Provenance prov;
    prov.kind = Provenance::Kind::Permutation;
    prov.label = H.label;
    return Character(G, std::move(values), prov);
}

Character tensor(const Character& a, const Character& b) {
    if (!same_group(a.group(), b.group())) throw InputError("tensor product of characters of different groups");
    std::vector<CyclotomicNumber> values;
    values.reserve(a.values().size());
    std::unordered_map<const void*, std::unordered_map<const void*, CyclotomicNumber>> memo;
    for (std::size_t c = 0; c < a.values().size(); ++c) {
        auto& inner = memo[a[c].identity()];
        auto it = inner.find(b[c].identity());
        if (it == inner.end()) it = inner.emplace(b[c].identity(), a[c] * b[c]).first;
        values.push_back(it->second);
    }
    Provenance prov;
    prov.label = a.id() + "*" + b.id();
    return Character(a.group_ptr(), std::move(values), prov);
}

Rational inner_product(const Character& a, const Character& b) {
    if (!same_group(a.group(), b.group())) throw InputError("inner product of characters of different groups");
    const auto& G = a.group();
    // group equal value pairs so each product is formed once
    std::unordered_map<const void*, std::unordered_map<const void*, std::pair<std::size_t, u64>>> weights;
    for (std::size_t c = 0; c < G.classes().size(); ++c) {
        if (a[c].is_zero() || b[c].is_zero()) continue;
        auto& slot = weights[a[c].identity()][b[c].identity()];
        slot.first = c;
        slot.second += G.classes()[c].size;
    }
    // Exact rational part via traces, with a numerical guard that the sum really is rational.
    Rational exact;
    std::complex<double> approx = 0;
    for (const auto& [ka, inner] : weights)
        for (const auto& [kb, entry] : inner) {
            auto [c, w] = entry;
            exact += hermitian_trace(a[c], b[c]) * Rational(static_cast<std::int64_t>(w));
            approx += static_cast<double>(w) * a[c].approx() * std::conj(b[c].approx());
        }
    exact = exact / Rational(static_cast<std::int64_t>(G.order()));
    approx /= static_cast<double>(G.order());
    double scale = 1.0 + std::abs(exact.to_double());
    if (std::abs(approx - std::complex<double>(exact.to_double(), 0)) > 1e-6 * scale)
        throw ArithmeticError("inner product is not rational");
    return exact;
}

bool is_faithful(const Character& chi) {
    const auto& G = chi.group();
    u64 kernel = 0;
    for (std::size_t c = 0; c < G.classes().size(); ++c)
        if (chi[c] == chi[0]) kernel += G.classes()[c].size;
    return kernel == 1;
}

std::vector<Character> faithful_characters(const CharacterTable& table) {
    std::vector<Character> out;
    for (const auto& chi : table.characters)
        if (is_faithful(chi)) out.push_back(chi);
    return out;
}

PsiDescriptor descriptor_of(const Character& tau) {
    const auto& prov = tau.provenance();
    if (prov.kind == Provenance::Kind::Induced || prov.kind == Provenance::Kind::LiftedFromQuotient) return prov.psi;
    const auto& G = tau.group();
    const u64 d = G.pn() / G.pr();
    const auto pr = static_cast<std::int64_t>(G.pr());
    // w from the scalar on b^{p^r}, u from the trace at a
    CyclotomicNumber at_b = tau.at({0, G.pr() % G.pn()});
    std::optional<u64> w;
    for (u64 k = 0; k < d && !w; ++k)
        if (at_b == CyclotomicNumber(pr) * CyclotomicNumber::zeta(d, static_cast<std::int64_t>(k))) w = k;
    CyclotomicNumber at_a = tau.at({1, 0});
    for (u64 u = 1; u < G.q() && w; ++u) {
        if (G.orbit_min(u) != u) continue;
        std::vector<std::pair<std::int64_t, Rational>> terms;
        for (u64 h : G.H()) terms.emplace_back(static_cast<std::int64_t>(u * h % G.q()), Rational(1));
        if (CyclotomicNumber::from_exponents(G.q(), terms) == at_a) {
            PsiDescriptor psi{u, *w};
            if (induce_from_X(tau.group_ptr(), psi) == tau) return psi;
        }
    }
    throw InputError("character is not induced from a character of X");
}

TensorDecomposition tensor_decompose(const Character& tau) {
    if (!is_faithful(tau)) throw InputError("tensor_decompose needs a faithful character");
    const auto& G = tau.group();
    PsiDescriptor psi = descriptor_of(tau);
    // tau_r: the faithful character of C_q x| C_{p^r} with the same u, inflated to G
    auto Gr = make_group(G.q(), G.p(), G.r(), G.j());
    Character base = induce_from_X(Gr, {psi.u, 0});
    std::vector<CyclotomicNumber> values;
    values.reserve(G.classes().size());
    for (const auto& c : G.classes()) values.push_back(base.at({c.rep.x, c.rep.y % Gr->pn()}));
    Provenance prov;
    prov.kind = Provenance::Kind::LiftedFromQuotient;
    prov.level = G.r();
    prov.psi = {psi.u, 0};
    Character tau_r(tau.group_ptr(), std::move(values), prov);
    u64 e = G.n() > G.r() ? psi.w : 0;
    Character chi = linear_character(tau.group_ptr(), e);
    return TensorDecomposition{std::move(tau_r), std::move(chi), e};
}

AbelianField character_field(const Character& chi) { return field_of_values(chi.values()); }

AbelianField formula_field(const MetacyclicGroup& G) {
    const u64 q = G.q();
    const u64 d = G.pn() / G.pr();
    const u64 N = q * d;
    std::vector<u64> stab;
    for (u64 h : G.H()) {
        // k = h mod q, k = 1 mod d
        u64 k = d == 1 ? h : (h * d % N * nt::inverse_mod(d % q, q) + q * nt::inverse_mod(q % d, d)) % N;
        stab.push_back(k);
    }
    return AbelianField(N, stab);
}

QuotientIdentity quotient_identity(const GroupPtr& G, const CharacterTable& table) {
    const unsigned n = G->n();
    QuotientIdentity out;
    out.lhs = VirtualCharacter(G);
    out.lhs.add(1, permutation_character(G, MetacyclicGroup::subgroup_F(*G, n)));
    out.lhs.add(1, permutation_character(G, MetacyclicGroup::subgroup_K(*G, n - 1)));
    out.lhs.add(-1, permutation_character(G, MetacyclicGroup::subgroup_K(*G, n)));
    out.lhs.add(-1, permutation_character(G, MetacyclicGroup::subgroup_F(*G, n - 1)));
    out.exponent = static_cast<std::int64_t>(G->pr());
    auto faithful = faithful_characters(table);
    out.faithful_count = faithful.size();
    out.rhs = VirtualCharacter(G);
    for (const auto& tau : faithful) out.rhs.add(out.exponent, tau);
    auto lhs_values = out.lhs.values();
    out.equal = lhs_values == out.rhs.values();
    if (!faithful.empty()) {
        Character lhs_char(G, lhs_values, Provenance{});
        Rational m = inner_product(lhs_char, faithful.front());
        if (!m.small_integer()) throw InvariantViolation("multiplicity is not an integer");
        out.multiplicity = *m.small_integer();
        VirtualCharacter scaled(G);
        for (const auto& tau : faithful) scaled.add(out.multiplicity, tau);
        out.equal_at_multiplicity = lhs_values == scaled.values();
    }
    return out;
}

}  // namespace schurgate
