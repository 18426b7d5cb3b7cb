#include "schurgate/group.hpp"

#include <algorithm>

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"

namespace schurgate {

namespace {

constexpr std::uint64_t kMaxGroupOrder = 10'000'000;

unsigned order_exponent(std::uint64_t j, std::uint64_t q, std::uint64_t p, unsigned n) {
    if (j % q == 0) throw InputError("not metacyclic of required type: j must be a unit modulo q");
    if (j % q == 1) throw InputError("abelian: j = 1 gives the direct product");
    std::uint64_t ord = nt::multiplicative_order(j % q, q);
    int e = nt::prime_power_exponent(ord, p);
    if (e < 1 || static_cast<unsigned>(e) > n)
        throw InputError("not metacyclic of required type: j has order " + std::to_string(ord) + " modulo " +
                         std::to_string(q) + ", which is not p^r with 0 < r <= n");
    return static_cast<unsigned>(e);
}

}  // namespace

MetacyclicGroup::MetacyclicGroup(std::uint64_t q, std::uint64_t p, unsigned n, std::uint64_t j) {
    if (!nt::is_prime(q) || q == 2) throw InputError("q must be an odd prime");
    if (!nt::is_prime(p) || p == 2) throw InputError("p must be an odd prime");
    if (p == q) throw InputError("p and q must be distinct");
    if (n == 0) throw InputError("n must be positive");
    std::uint64_t pn = 1;
    for (unsigned i = 0; i < n; ++i) {
        pn *= p;
        if (pn > kMaxGroupOrder) throw InputError("group too large");
    }
    if (q * pn > kMaxGroupOrder) throw InputError("group too large (order above 10^7)");
    params_.q = q;
    params_.p = p;
    params_.n = n;
    params_.j = j % q;
    params_.r = order_exponent(j, q, p, n);
    pn_ = pn;
    pr_ = nt::ipow(p, params_.r);
    for (std::uint64_t c = 2; c < q; ++c) {
        if (nt::multiplicative_order(c, q) == pr_) {
            params_.canonical_j = c;
            break;
        }
    }
    jpow_.resize(pr_);
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < pr_; ++i) {
        jpow_[i] = v;
        v = v * params_.j % q;
    }
    H_ = jpow_;
    std::sort(H_.begin(), H_.end());
    orbit_min_.assign(q, 0);
    orbit_ordinal_.assign(q, 0);
    std::vector<bool> seen(q, false);
    std::uint32_t ordinal = 0;
    for (std::uint64_t x = 1; x < q; ++x) {
        if (seen[x]) continue;
        ++ordinal;
        for (std::uint64_t h : H_) {
            std::uint64_t y = x * h % q;
            seen[y] = true;
            orbit_min_[y] = x;
            orbit_ordinal_[y] = ordinal;
        }
    }
    build_classes();
}

MetacyclicGroup MetacyclicGroup::canonical(std::uint64_t q, std::uint64_t p, unsigned n, unsigned r) {
    if (!nt::is_prime(q) || !nt::is_prime(p)) throw InputError("p and q must be primes");
    std::uint64_t pr = nt::ipow(p, r);
    if (r == 0 || (q - 1) % pr != 0) throw InputError("p^r must divide q - 1 with r > 0");
    for (std::uint64_t c = 2; c < q; ++c)
        if (nt::multiplicative_order(c, q) == pr) return MetacyclicGroup(q, p, n, c);
    throw InputError("no residue of order p^r");
}

void MetacyclicGroup::build_classes() {
    const std::uint64_t q = params_.q;
    const std::uint64_t blocks = pn_ / pr_;  // values of z with y = p^r z
    a_class_.assign(pn_, 0);
    std::uint32_t orbits = orbit_ordinal_.empty() ? 0 : *std::max_element(orbit_ordinal_.begin(), orbit_ordinal_.end());
    b_class_.assign((orbits + 1) * blocks, 0);
    classes_.clear();
    classes_.reserve(pn_ + orbits * blocks);
    // x = 0 first, by y; then the orbit minima in increasing order, by y
    for (std::uint64_t y = 0; y < pn_; ++y) {
        ConjClass c;
        c.rep = {0, y};
        c.size = (y % pr_ == 0) ? 1 : q;
        c.order = element_order(c.rep);
        if (y % pr_ == 0)
            b_class_[y / pr_] = static_cast<std::uint32_t>(classes_.size());
        else
            a_class_[y] = static_cast<std::uint32_t>(classes_.size());
        classes_.push_back(c);
    }
    for (std::uint64_t x = 1; x < q; ++x) {
        if (orbit_min_[x] != x) continue;
        for (std::uint64_t z = 0; z < blocks; ++z) {
            ConjClass c;
            c.rep = {x, z * pr_};
            c.size = pr_;
            c.order = element_order(c.rep);
            b_class_[orbit_ordinal_[x] * blocks + z] = static_cast<std::uint32_t>(classes_.size());
            classes_.push_back(c);
        }
    }
}

GroupElement MetacyclicGroup::mul(const GroupElement& g, const GroupElement& h) const {
    return {(g.x + j_power(g.y) * h.x) % params_.q, (g.y + h.y) % pn_};
}

GroupElement MetacyclicGroup::inverse(const GroupElement& g) const {
    std::uint64_t jinv = jpow_[(pr_ - g.y % pr_) % pr_];
    return {(params_.q - jinv * g.x % params_.q) % params_.q, (pn_ - g.y) % pn_};
}

GroupElement MetacyclicGroup::pow(const GroupElement& g, std::uint64_t k) const {
    GroupElement result{0, 0}, base = g;
    while (k) {
        if (k & 1) result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

GroupElement MetacyclicGroup::conjugate(const GroupElement& g, const GroupElement& by) const {
    return mul(mul(by, g), inverse(by));
}

std::uint64_t MetacyclicGroup::element_order(const GroupElement& g) const {
    std::uint64_t oy = pn_ / nt::gcd(g.y % pn_, pn_);
    if (g.y % pr_ != 0 || g.x % params_.q == 0) return oy;
    return oy * params_.q;
}

std::size_t MetacyclicGroup::class_index(const GroupElement& g) const {
    std::uint64_t y = g.y % pn_;
    if (y % pr_ != 0) return a_class_[y];
    return b_class_[orbit_ordinal_[g.x % params_.q] * (pn_ / pr_) + y / pr_];
}

std::size_t MetacyclicGroup::power_class(std::size_t cls, std::uint64_t k) const {
    return class_index(pow(classes_[cls].rep, k));
}

Subgroup MetacyclicGroup::subgroup_K(const MetacyclicGroup& G, unsigned k) {
    Subgroup s;
    s.kind = Subgroup::Kind::AB;
    s.k = k;
    std::uint64_t pk = nt::ipow(G.p(), k);
    s.label = "K_" + std::to_string(pk);
    s.generators = {{1, 0}, {0, pk % G.pn()}};
    s.order = G.q() * (G.pn() / pk);
    s.index = pk;
    return s;
}

Subgroup MetacyclicGroup::subgroup_F(const MetacyclicGroup& G, unsigned k) {
    Subgroup s;
    s.kind = Subgroup::Kind::B;
    s.k = k;
    std::uint64_t pk = nt::ipow(G.p(), k);
    s.label = "F_" + std::to_string(pk);
    s.generators = {{0, pk % G.pn()}};
    s.order = G.pn() / pk;
    s.index = G.q() * pk;
    return s;
}

Subgroup MetacyclicGroup::subgroup_X() const {
    Subgroup s = subgroup_K(*this, params_.r);
    s.label = "X";
    return s;
}

std::vector<Subgroup> MetacyclicGroup::tower_subgroups() const {
    std::vector<Subgroup> out;
    for (unsigned k = 0; k <= params_.n; ++k) {
        out.push_back(subgroup_K(*this, k));
        out.push_back(subgroup_F(*this, k));
    }
    return out;
}

bool MetacyclicGroup::contains(const Subgroup& H, const GroupElement& g) const {
    std::uint64_t pk = nt::ipow(params_.p, H.k);
    bool y_ok = (g.y % pn_) % pk == 0;
    if (H.kind == Subgroup::Kind::AB) return y_ok;
    return y_ok && g.x % params_.q == 0;
}

std::uint64_t MetacyclicGroup::class_meets(const Subgroup& H, std::size_t cls) const {
    const ConjClass& c = classes_[cls];
    std::uint64_t pk = nt::ipow(params_.p, H.k);
    if (c.rep.y % pk != 0) return 0;
    if (H.kind == Subgroup::Kind::AB) return c.size;
    // <b^{p^k}> meets a class only in (0, y); every class with x-part 0 available contains it once
    return c.rep.x == 0 ? 1 : 0;
}

std::vector<GroupElement> MetacyclicGroup::elements() const {
    std::vector<GroupElement> out;
    out.reserve(order());
    for (std::uint64_t x = 0; x < params_.q; ++x)
        for (std::uint64_t y = 0; y < pn_; ++y) out.push_back({x, y});
    return out;
}

}  // namespace schurgate
