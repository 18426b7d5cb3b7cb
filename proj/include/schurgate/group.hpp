#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace schurgate {

// a^x b^y in C_q x| C_{p^n}.
struct GroupElement {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct ConjClass {
    GroupElement rep;  // lexicographically minimal member
    std::uint64_t size = 1;
    std::uint64_t order = 1;
};

struct MetacyclicParams {
    std::uint64_t q = 0, p = 0;
    unsigned n = 0;
    std::uint64_t j = 0;  // as given, reduced mod q
    unsigned r = 0;       // ord_q(j) = p^r
    std::uint64_t canonical_j = 0;
};

// Subgroup with an explicit membership rule; only the shapes used by the tower.
struct Subgroup {
    enum class Kind { AB, B };  // <a, b^{p^k}> or <b^{p^k}>
    Kind kind = Kind::AB;
    unsigned k = 0;
    std::string label;
    std::vector<GroupElement> generators;
    std::uint64_t order = 1;
    std::uint64_t index = 1;
};

// G = <a, b | a^q = b^{p^n} = 1, b a b^-1 = a^j>, with ord_q(j) = p^r, 0 < r <= n.
class MetacyclicGroup {
public:
    // Throws InputError ("abelian", "not metacyclic of required type", ...) on bad input.
    MetacyclicGroup(std::uint64_t q, std::uint64_t p, unsigned n, std::uint64_t j);
    // Same group with j replaced by the smallest residue of order p^r.
    static MetacyclicGroup canonical(std::uint64_t q, std::uint64_t p, unsigned n, unsigned r);

    const MetacyclicParams& params() const { return params_; }
    std::uint64_t q() const { return params_.q; }
    std::uint64_t p() const { return params_.p; }
    unsigned n() const { return params_.n; }
    unsigned r() const { return params_.r; }
    std::uint64_t j() const { return params_.j; }
    std::uint64_t pn() const { return pn_; }
    std::uint64_t pr() const { return pr_; }
    std::uint64_t order() const { return params_.q * pn_; }

    std::uint64_t j_power(std::uint64_t y) const { return jpow_[y % pr_]; }
    GroupElement mul(const GroupElement& g, const GroupElement& h) const;
    GroupElement inverse(const GroupElement& g) const;
    GroupElement pow(const GroupElement& g, std::uint64_t k) const;
    GroupElement conjugate(const GroupElement& g, const GroupElement& by) const;  // by g by^-1
    std::uint64_t element_order(const GroupElement& g) const;

    const std::vector<ConjClass>& classes() const { return classes_; }
    std::size_t class_index(const GroupElement& g) const;
    std::size_t identity_class() const { return 0; }
    std::uint64_t centralizer_order(std::size_t cls) const { return order() / classes_[cls].size; }
    // Index of the class of g^k for a representative g of class cls.
    std::size_t power_class(std::size_t cls, std::uint64_t k) const;

    // The H-orbit {x j^i} of a nonzero residue x is represented by its minimum.
    std::uint64_t orbit_min(std::uint64_t x) const { return orbit_min_[x % params_.q]; }
    // The subgroup H = <j> of (Z/q)^x, sorted.
    const std::vector<std::uint64_t>& H() const { return H_; }

    Subgroup subgroup_X() const;  // <a, b^{p^r}>, cyclic of order q p^{n-r}
    std::vector<Subgroup> tower_subgroups() const;
    static Subgroup subgroup_K(const MetacyclicGroup& G, unsigned k);  // <a, b^{p^k}>
    static Subgroup subgroup_F(const MetacyclicGroup& G, unsigned k);  // <b^{p^k}>
    bool contains(const Subgroup& H, const GroupElement& g) const;
    // Number of elements of class cls lying in H.
    std::uint64_t class_meets(const Subgroup& H, std::size_t cls) const;

    std::vector<GroupElement> elements() const;  // for brute-force checks on small groups

private:
    void build_classes();

    MetacyclicParams params_;
    std::uint64_t pn_ = 1, pr_ = 1;
    std::vector<std::uint64_t> jpow_;
    std::vector<std::uint64_t> H_;
    std::vector<std::uint64_t> orbit_min_;
    std::vector<std::uint32_t> orbit_ordinal_;  // ordinal of the H-orbit of x among orbit minima
    std::vector<ConjClass> classes_;
    std::vector<std::uint32_t> a_class_;  // class index of (0, y), y not divisible by p^r
    std::vector<std::uint32_t> b_class_;  // class index of (orbit ordinal, z) with y = p^r z
};

}  // namespace schurgate
