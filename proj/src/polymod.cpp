#include "schurgate/polymod.hpp"

#include <algorithm>
#include <sstream>

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"

namespace schurgate {

using nt::u64;

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
    while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
    if (c_.empty() || (c_.size() == 1 && c_[0] == 0)) throw InputError("zero polynomial");
}

IntPoly IntPoly::example_f1() { return parse("1,0,-42,-70,168,126,-84,-45"); }

IntPoly IntPoly::parse(const std::string& spec) {
    if (spec == "example-F1") return example_f1();
    std::vector<mpz_class> c;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        mpz_class z;
        if (item.empty() || z.set_str(item[0] == '+' ? item.substr(1) : item, 10) != 0)
            throw InputError("bad polynomial coefficient '" + item + "'");
        c.push_back(z);
    }
    if (c.size() < 2) throw InputError("polynomial must have degree at least 1");
    std::reverse(c.begin(), c.end());
    return IntPoly(std::move(c));
}

IntPoly IntPoly::derivative() const {
    if (degree() == 0) return IntPoly({0});
    std::vector<mpz_class> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return IntPoly(std::move(d));
}

std::string IntPoly::str() const {
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) s += (s.empty() ? "" : ",") + c_[i].get_str();
    return s;
}

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    const std::size_t m = f.degree(), n = g.degree(), N = m + n;
    if (N == 0) return 1;
    // Sylvester matrix, then fraction-free (Bareiss) elimination
    std::vector<std::vector<mpz_class>> M(N, std::vector<mpz_class>(N, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= m; ++k) M[i][i + k] = f.coeffs()[m - k];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k) M[n + i][i + k] = g.coeffs()[n - k];
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (M[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < N && M[swap][k] == 0) ++swap;
            if (swap == N) return 0;
            std::swap(M[k], M[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < N; ++i) {
            for (std::size_t j = k + 1; j < N; ++j) {
                M[i][j] = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign * M[N - 1][N - 1];
}

mpz_class IntPoly::discriminant() const {
    const std::size_t n = degree();
    mpz_class r = resultant(*this, derivative());
    mpz_class d;
    mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), c_.back().get_mpz_t());
    return (n * (n - 1) / 2) % 2 ? mpz_class(-d) : d;
}

namespace {

using Poly = std::vector<u64>;  // mod v, constant term first, no trailing zeros

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mulmod_poly(const Poly& a, const Poly& b, const Poly& m, u64 v) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + nt::mulmod(a[i], b[j], v)) % v;
    // m is monic
    const std::size_t dm = m.size() - 1;
    for (std::size_t i = prod.size(); i-- > dm;) {
        u64 c = prod[i];
        if (c == 0) continue;
        for (std::size_t k = 0; k <= dm; ++k) prod[i - dm + k] = (prod[i - dm + k] + v - nt::mulmod(c, m[k], v)) % v;
    }
    prod.resize(std::min(prod.size(), dm));
    trim(prod);
    return prod;
}

Poly powmod_poly(Poly base, u64 e, const Poly& m, u64 v) {
    Poly result{1};
    for (; e; e >>= 1) {
        if (e & 1) result = mulmod_poly(result, base, m, v);
        base = mulmod_poly(base, base, m, v);
    }
    return result;
}

Poly sub(Poly a, const Poly& b, u64 v) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + v - b[i]) % v;
    trim(a);
    return a;
}

Poly make_monic(Poly a, u64 v) {
    u64 inv = nt::inverse_mod(a.back(), v);
    for (auto& c : a) c = nt::mulmod(c, inv, v);
    return a;
}

Poly rem(Poly a, const Poly& b, u64 v) {
    Poly mb = make_monic(b, v);
    const std::size_t db = mb.size() - 1;
    while (a.size() > db && !a.empty()) {
        u64 c = a.back();
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t k = 0; k <= db; ++k) a[shift + k] = (a[shift + k] + v - nt::mulmod(c, mb[k], v)) % v;
        trim(a);
    }
    return a;
}

Poly gcd_poly(Poly a, Poly b, u64 v) {
    while (!b.empty()) {
        Poly r = rem(a, b, v);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : make_monic(a, v);
}

Poly exact_div(Poly a, const Poly& b, u64 v) {
    Poly mb = make_monic(b, v);
    u64 lead_inv = nt::inverse_mod(b.back(), v);
    const std::size_t db = mb.size() - 1;
    Poly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        u64 c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (std::size_t k = 0; k <= db; ++k) a[i - db + k] = (a[i - db + k] + v - nt::mulmod(c, mb[k], v)) % v;
    }
    for (auto& c : q) c = nt::mulmod(c, lead_inv, v);
    trim(q);
    return q;
}

}  // namespace

std::vector<unsigned> factorization_pattern(const IntPoly& f, u64 v) {
    if (!nt::is_prime(v)) throw InputError(std::to_string(v) + " is not prime");
    Poly g;
    for (const auto& c : f.coeffs()) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), v);
        g.push_back(r.get_ui());
    }
    trim(g);
    if (g.size() != f.coeffs().size()) throw InputError("leading coefficient vanishes mod " + std::to_string(v));
    g = make_monic(g, v);
    // squarefree check: gcd(g, g') = 1
    Poly dg;
    for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(nt::mulmod(g[i], i % v, v));
    trim(dg);
    if (dg.empty() || gcd_poly(g, dg, v).size() != 1) throw InputError("polynomial is not squarefree mod " + std::to_string(v));
    // distinct-degree factorization
    std::vector<unsigned> pattern;
    Poly x{0, 1}, h = x;
    for (unsigned d = 1; g.size() > 1; ++d) {
        if (2 * d > g.size() - 1) {
            pattern.push_back(static_cast<unsigned>(g.size() - 1));
            break;
        }
        h = powmod_poly(h, v, g, v);
        Poly common = gcd_poly(g, sub(h, x, v), v);
        if (common.size() > 1) {
            std::size_t deg = common.size() - 1;
            for (std::size_t k = 0; k < deg / d; ++k) pattern.push_back(d);
            g = exact_div(g, common, v);
            h = rem(h, g, v);
        }
    }
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

}  // namespace schurgate
