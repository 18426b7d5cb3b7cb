#include "schurgate/cyclotomic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"

namespace schurgate {

using nt::u64;
using Term = CyclotomicNumber::Term;

struct CyclotomicNumber::Impl {
    u64 m = 1;
    std::vector<Term> terms;
    std::size_t hash = 0;
};

namespace {

std::atomic<u64> g_max_conductor{0};

u64 conductor_cap() {
    u64 cap = g_max_conductor.load(std::memory_order_relaxed);
    if (cap != 0) return cap;
    cap = 1000000;
    if (const char* env = std::getenv("SCHURGATE_MAX_CONDUCTOR")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) cap = v;
    }
    u64 expected = 0;
    g_max_conductor.compare_exchange_strong(expected, cap);
    return g_max_conductor.load();
}

void check_conductor(u64 m) {
    if (m > conductor_cap())
        throw ConductorOverflow("conductor " + std::to_string(m) + " exceeds the cap " + std::to_string(conductor_cap()));
}

// Monic cyclotomic polynomial of a squarefree R, dense, lowest degree first.
std::vector<std::int64_t> squarefree_cyclotomic_poly(u64 R) {
    std::vector<std::int64_t> f{-1, 1};
    for (u64 l : nt::prime_factors(R)) {
        // Phi_{n l}(x) = Phi_n(x^l) / Phi_n(x)
        std::vector<std::int64_t> num((f.size() - 1) * l + 1, 0);
        for (std::size_t i = 0; i < f.size(); ++i) num[i * l] = f[i];
        std::size_t df = f.size() - 1;
        std::vector<std::int64_t> quot(num.size() - df, 0);
        for (std::size_t i = num.size() - 1; i + 1 > df; --i) {
            std::int64_t c = num[i];
            quot[i - df] = c;
            if (c == 0) continue;
            for (std::size_t k = 0; k <= df; ++k) {
                std::int64_t prod;
                if (__builtin_mul_overflow(c, f[k], &prod) || __builtin_sub_overflow(num[i - df + k], prod, &num[i - df + k]))
                    throw ArithmeticError("cyclotomic polynomial coefficient overflow");
            }
            if (i == df) break;
        }
        f = std::move(quot);
    }
    return f;
}

using SparseInt = std::vector<std::pair<std::uint32_t, std::int64_t>>;

// Everything needed to reduce exponents modulo Phi_m. With R = rad(m) and s = m / R,
// Phi_m(x) = Phi_R(x^s), so zeta_m^(s a + b) reduces through x^a mod Phi_R.
struct ConductorInfo {
    u64 m = 1, R = 1, s = 1, phi = 1, phiR = 1;
    std::vector<u64> primes;
    std::vector<SparseInt> red;  // red[a] = x^a mod Phi_R for phiR <= a < R (indexed by a - phiR)
    std::vector<std::int64_t> phi_R_poly;
};

std::shared_ptr<const ConductorInfo> build_info(u64 m) {
    auto info = std::make_shared<ConductorInfo>();
    info->m = m;
    info->primes = nt::prime_factors(m);
    info->R = 1;
    for (u64 p : info->primes) info->R *= p;
    info->s = m / info->R;
    info->phi = nt::euler_phi(m);
    info->phiR = nt::euler_phi(info->R);
    info->phi_R_poly = squarefree_cyclotomic_poly(info->R);
    const u64 d = info->phiR;
    SparseInt top;  // x^d = -(Phi_R - x^d)
    for (u64 i = 0; i < d; ++i)
        if (info->phi_R_poly[i] != 0) top.emplace_back(static_cast<std::uint32_t>(i), -info->phi_R_poly[i]);
    if (info->R > d) {
        info->red.reserve(info->R - d);
        info->red.push_back(top);
        for (u64 a = d + 1; a < info->R; ++a) {
            const SparseInt& prev = info->red.back();
            std::int64_t carry = 0;
            SparseInt shifted;
            shifted.reserve(prev.size());
            for (auto [e, c] : prev) {
                if (e + 1 == d)
                    carry = c;
                else
                    shifted.emplace_back(e + 1, c);
            }
            SparseInt next;
            next.reserve(shifted.size() + top.size());
            std::size_t i = 0, k = 0;
            while (i < shifted.size() || k < top.size()) {
                if (k == top.size() || (i < shifted.size() && shifted[i].first < top[k].first)) {
                    next.push_back(shifted[i++]);
                } else {
                    std::int64_t add = 0;
                    if (carry != 0 && __builtin_mul_overflow(carry, top[k].second, &add))
                        throw ArithmeticError("reduction coefficient overflow");
                    if (i < shifted.size() && shifted[i].first == top[k].first) {
                        std::int64_t v;
                        if (__builtin_add_overflow(shifted[i].second, add, &v))
                            throw ArithmeticError("reduction coefficient overflow");
                        if (v != 0) next.emplace_back(top[k].first, v);
                        ++i;
                    } else if (add != 0) {
                        next.emplace_back(top[k].first, add);
                    }
                    ++k;
                }
            }
            info->red.push_back(std::move(next));
        }
    }
    return info;
}

const ConductorInfo& conductor_info(u64 m) {
    thread_local std::unordered_map<u64, std::shared_ptr<const ConductorInfo>> local;
    if (auto it = local.find(m); it != local.end()) return *it->second;

    static std::shared_mutex mutex;
    static std::unordered_map<u64, std::shared_ptr<const ConductorInfo>> shared;
    std::shared_ptr<const ConductorInfo> info;
    {
        std::shared_lock lock(mutex);
        if (auto it = shared.find(m); it != shared.end()) info = it->second;
    }
    if (!info) {
        auto built = build_info(m);
        std::unique_lock lock(mutex);
        info = shared.emplace(m, std::move(built)).first->second;
    }
    return *local.emplace(m, std::move(info)).first->second;
}

using Raw = std::vector<std::pair<u64, Rational>>;

// Sorted, merged, zero-free terms from an unsorted list whose exponents are already < phi(m).
std::vector<Term> merge_terms(Raw& raw) {
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(raw.size());
    for (auto& [e, c] : raw) {
        if (!out.empty() && out.back().exp == e)
            out.back().coeff += c;
        else {
            if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
            out.push_back(Term{static_cast<std::uint32_t>(e), std::move(c)});
        }
    }
    if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
    return out;
}

// Power-basis terms at conductor m for arbitrary exponents in [0, m).
std::vector<Term> reduce(u64 m, Raw raw) {
    const ConductorInfo& info = conductor_info(m);
    if (raw.size() >= 32 && m <= 64 * raw.size()) {
        // dense accumulation: many terms share an exponent in products and sums
        std::vector<Rational> acc(m);
        for (auto& [e, c] : raw) acc[e] += c;
        for (u64 e = m; e-- > info.phi;) {
            if (acc[e].is_zero()) continue;
            u64 a = e / info.s, b = e % info.s;
            for (auto [a2, c2] : info.red[a - info.phiR]) acc[info.s * a2 + b] += acc[e] * Rational(c2);
        }
        std::vector<Term> out;
        for (u64 e = 0; e < info.phi; ++e)
            if (!acc[e].is_zero()) out.push_back(Term{static_cast<std::uint32_t>(e), std::move(acc[e])});
        return out;
    }
    Raw out;
    out.reserve(raw.size());
    for (auto& [e, c] : raw) {
        if (c.is_zero()) continue;
        if (e < info.phi) {
            out.emplace_back(e, std::move(c));
            continue;
        }
        u64 a = e / info.s, b = e % info.s;
        for (auto [a2, c2] : info.red[a - info.phiR]) out.emplace_back(info.s * a2 + b, c * Rational(c2));
    }
    return merge_terms(out);
}

std::size_t hash_terms(u64 m, const std::vector<Term>& terms) {
    std::size_t h = std::hash<u64>{}(m) * 0x9e3779b97f4a7c15ULL;
    for (const auto& t : terms) {
        h ^= std::hash<std::uint32_t>{}(t.exp) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= t.coeff.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

// Terms of x (at conductor m) re-expressed at conductor M, a multiple of m.
std::vector<Term> lift(u64 m, const std::vector<Term>& terms, u64 M) {
    if (m == M) return terms;
    u64 f = M / m;
    Raw raw;
    raw.reserve(terms.size());
    for (const auto& t : terms) raw.emplace_back(t.exp * f, t.coeff);
    return reduce(M, std::move(raw));
}

// Projection of x in Q(zeta_m), m = l * m2 with l not dividing m2, onto Q(zeta_m2):
// the relative trace divided by l - 1.
std::vector<Term> project(u64 m, const std::vector<Term>& terms, u64 l, u64 m2) {
    u64 s = nt::inverse_mod(m2 % l, l);
    u64 t = m2 == 1 ? 0 : nt::inverse_mod(l % m2, m2);
    Rational off = Rational(-1, static_cast<std::int64_t>(l - 1));
    Raw raw;
    raw.reserve(terms.size());
    for (const auto& term : terms) {
        u64 i = term.exp;
        bool on = (i * s) % l == 0;
        u64 e = m2 == 1 ? 0 : nt::mulmod(i, t, m2);
        raw.emplace_back(e, on ? term.coeff : term.coeff * off);
    }
    (void)m;
    return reduce(m2, std::move(raw));
}

// Lower the conductor as far as possible.
std::pair<u64, std::vector<Term>> descend(u64 m, std::vector<Term> terms) {
    while (m > 1) {
        if (terms.empty()) return {1, {}};
        bool changed = false;
        for (u64 l : conductor_info(m).primes) {
            if (m % (l * l) == 0) {
                bool all = std::all_of(terms.begin(), terms.end(), [&](const Term& t) { return t.exp % l == 0; });
                if (!all) continue;
                for (auto& t : terms) t.exp = static_cast<std::uint32_t>(t.exp / l);
                m /= l;
                changed = true;
                break;
            }
            u64 m2 = m / l;
            auto proj = project(m, terms, l, m2);
            if (lift(m2, proj, m) == terms) {
                terms = std::move(proj);
                m = m2;
                changed = true;
                break;
            }
        }
        if (!changed) break;
    }
    if (terms.empty()) m = 1;
    return {m, std::move(terms)};
}

}  // namespace

CyclotomicNumber make_cyclotomic(u64 m, std::vector<Term> terms, bool canonical) {
    auto impl = std::make_shared<CyclotomicNumber::Impl>();
    if (!canonical) std::tie(m, terms) = descend(m, std::move(terms));
    if (terms.empty()) m = 1;
    impl->m = m;
    impl->terms = std::move(terms);
    impl->hash = hash_terms(impl->m, impl->terms);
    return CyclotomicNumber(std::shared_ptr<const CyclotomicNumber::Impl>(std::move(impl)));
}

std::uint64_t max_conductor() { return conductor_cap(); }
void set_max_conductor(std::uint64_t bound) {
    if (bound == 0) throw InputError("conductor cap must be positive");
    g_max_conductor.store(bound);
}

CyclotomicNumber::CyclotomicNumber() {
    static const auto zero = make_cyclotomic(1, {}, true).impl_;
    impl_ = zero;
}

CyclotomicNumber::CyclotomicNumber(std::int64_t value) : CyclotomicNumber(Rational(value)) {}

CyclotomicNumber::CyclotomicNumber(const Rational& value) {
    if (value.is_zero())
        *this = CyclotomicNumber();
    else
        impl_ = make_cyclotomic(1, {Term{0, value}}, true).impl_;
}

CyclotomicNumber CyclotomicNumber::zeta(u64 m, std::int64_t k) {
    if (m == 0) throw InputError("conductor must be positive");
    return from_exponents(m, {{k, Rational(1)}});
}

CyclotomicNumber CyclotomicNumber::from_exponents(u64 m, const std::vector<std::pair<std::int64_t, Rational>>& terms) {
    if (m == 0) throw InputError("conductor must be positive");
    check_conductor(m);
    Raw raw;
    raw.reserve(terms.size());
    for (const auto& [e, c] : terms) raw.emplace_back(nt::mod(e, m), c);
    return make_cyclotomic(m, reduce(m, std::move(raw)), false);
}

CyclotomicNumber CyclotomicNumber::from_coeffs(u64 m, const std::vector<Rational>& coeffs) {
    if (m == 0) throw InputError("conductor must be positive");
    check_conductor(m);
    if (coeffs.size() != nt::euler_phi(m))
        throw InputError("coefficient vector length " + std::to_string(coeffs.size()) + " does not match phi(" +
                         std::to_string(m) + ")");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) terms.push_back(Term{static_cast<std::uint32_t>(i), coeffs[i]});
    return make_cyclotomic(m, std::move(terms), false);
}

u64 CyclotomicNumber::conductor() const { return impl_->m; }
const std::vector<Term>& CyclotomicNumber::terms() const { return impl_->terms; }

std::vector<Rational> CyclotomicNumber::coeffs() const {
    std::vector<Rational> out(nt::euler_phi(impl_->m));
    for (const auto& t : impl_->terms) out[t.exp] = t.coeff;
    return out;
}

bool CyclotomicNumber::is_zero() const { return impl_->terms.empty(); }

std::optional<Rational> CyclotomicNumber::rational_value() const {
    if (impl_->m != 1) return std::nullopt;
    return impl_->terms.empty() ? Rational(0) : impl_->terms[0].coeff;
}

bool CyclotomicNumber::is_integral() const {
    return std::all_of(impl_->terms.begin(), impl_->terms.end(), [](const Term& t) { return t.coeff.is_integer(); });
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    std::vector<Term> terms = impl_->terms;
    for (auto& t : terms) t.coeff = -t.coeff;
    return make_cyclotomic(impl_->m, std::move(terms), true);
}

CyclotomicNumber CyclotomicNumber::galois(std::int64_t k) const {
    const u64 m = impl_->m;
    if (m == 1) return *this;
    u64 kk = nt::mod(k, m);
    if (nt::gcd(kk, m) != 1)
        throw ArithmeticError("Galois residue " + std::to_string(k) + " is not coprime to conductor " + std::to_string(m));
    if (kk == 1) return *this;
    Raw raw;
    raw.reserve(impl_->terms.size());
    for (const auto& t : impl_->terms) raw.emplace_back(nt::mulmod(t.exp, kk, m), t.coeff);
    // Galois automorphisms preserve the minimal conductor.
    return make_cyclotomic(m, reduce(m, std::move(raw)), true);
}

CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const u64 ma = a.conductor(), mb = b.conductor();
    const u64 L = nt::lcm(ma, mb);
    check_conductor(L);
    Raw raw;
    raw.reserve(a.terms().size() + b.terms().size());
    for (const auto& t : a.terms()) raw.emplace_back(t.exp * (L / ma), t.coeff);
    for (const auto& t : b.terms()) raw.emplace_back(t.exp * (L / mb), t.coeff);
    std::vector<Term> terms = (ma == L && mb == L) ? merge_terms(raw) : reduce(L, std::move(raw));
    return make_cyclotomic(L, std::move(terms), false);
}

CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) { return a + (-b); }

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.is_zero() || b.is_zero()) return CyclotomicNumber();
    if (a.conductor() == 1 || b.conductor() == 1) {
        const CyclotomicNumber& scalar = a.conductor() == 1 ? a : b;
        const CyclotomicNumber& other = a.conductor() == 1 ? b : a;
        const Rational& s = scalar.terms()[0].coeff;
        if (s.is_one()) return other;
        std::vector<Term> terms = other.terms();
        for (auto& t : terms) t.coeff *= s;
        return make_cyclotomic(other.conductor(), std::move(terms), true);
    }
    const u64 ma = a.conductor(), mb = b.conductor();
    const u64 L = nt::lcm(ma, mb);
    check_conductor(L);
    const u64 fa = L / ma, fb = L / mb;
    Raw raw;
    raw.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) raw.emplace_back((ta.exp * fa + tb.exp * fb) % L, ta.coeff * tb.coeff);
    return make_cyclotomic(L, reduce(L, std::move(raw)), false);
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.impl_ == b.impl_) return true;
    return a.impl_->hash == b.impl_->hash && a.impl_->m == b.impl_->m && a.impl_->terms == b.impl_->terms;
}

std::size_t CyclotomicNumber::hash() const { return impl_->hash; }

namespace {

using Poly = std::vector<Rational>;  // dense, lowest degree first

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Quotient and remainder of a / b over Q; b nonzero.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1);
    Rational lead_inv = b.back().inverse();
    const std::size_t db = b.size() - 1;
    for (std::size_t i = a.size() - 1;; --i) {
        Rational c = a[i] * lead_inv;
        if (!c.is_zero()) {
            q[i - db] = c;
            for (std::size_t k = 0; k <= db; ++k) a[i - db + k] -= c * b[k];
        }
        if (i == db) break;
    }
    trim(a);
    trim(q);
    return {q, a};
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t k = 0; k < b.size(); ++k) r[i + k] += a[i] * b[k];
    }
    trim(r);
    return r;
}

Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

}  // namespace

CyclotomicNumber CyclotomicNumber::inverse() const {
    if (is_zero()) throw ArithmeticError("inversion of zero");
    if (impl_->m == 1) return CyclotomicNumber(impl_->terms[0].coeff.inverse());
    const u64 m = impl_->m;
    const ConductorInfo& info = conductor_info(m);
    Poly phi(info.phi + 1);
    for (std::size_t i = 0; i < info.phi_R_poly.size(); ++i) phi[i * info.s] = Rational(info.phi_R_poly[i]);
    Poly a = coeffs();
    trim(a);
    // extended Euclid: track t with t * a = r (mod phi)
    Poly r0 = phi, r1 = a, t0, t1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly t2 = poly_sub(t0, poly_mul(q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw InvariantViolation("cyclotomic polynomial is not coprime to a nonzero element");
    Rational c = r0[0].inverse();
    std::vector<Term> terms;
    auto [q, rem] = divmod(t0, phi);
    for (std::size_t i = 0; i < rem.size(); ++i)
        if (!rem[i].is_zero()) terms.push_back(Term{static_cast<std::uint32_t>(i), rem[i] * c});
    return make_cyclotomic(m, std::move(terms), false);
}

std::complex<double> CyclotomicNumber::approx() const {
    std::complex<double> z = 0;
    const double m = static_cast<double>(impl_->m);
    for (const auto& t : impl_->terms) z += t.coeff.to_double() * std::polar(1.0, 2 * std::numbers::pi * t.exp / m);
    return z;
}

std::string CyclotomicNumber::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : impl_->terms) {
        Rational c = t.coeff;
        bool neg = c.sign() < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string cs = c.is_integer() ? c.numerator().get_str() : c.str();
        if (t.exp == 0) {
            os << cs;
            continue;
        }
        if (!c.is_one()) os << cs << "*";
        os << "z" << impl_->m;
        if (t.exp != 1) os << "^" << t.exp;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x) { return os << x.to_string(); }

void CyclotomicSum::add(const CyclotomicNumber& x, const Rational& weight) {
    if (x.is_zero() || weight.is_zero()) return;
    parts_.emplace_back(x, weight);
}

CyclotomicNumber CyclotomicSum::value() const {
    u64 L = 1;
    for (const auto& [x, w] : parts_) L = nt::lcm(L, x.conductor());
    check_conductor(L);
    Raw raw;
    for (const auto& [x, w] : parts_) {
        u64 f = L / x.conductor();
        for (const auto& t : x.terms()) raw.emplace_back(t.exp * f, w.is_one() ? t.coeff : t.coeff * w);
    }
    return make_cyclotomic(L, reduce(L, std::move(raw)), false);
}

Rational absolute_trace(const CyclotomicNumber& x) {
    const u64 m = x.conductor();
    const u64 phi = nt::euler_phi(m);
    Rational tr;
    for (const auto& t : x.terms()) {
        u64 g = nt::gcd(t.exp, m);
        u64 d = m / g;
        int mu = nt::mobius(d);
        if (mu == 0) continue;
        tr += t.coeff * Rational(mu * static_cast<std::int64_t>(phi / nt::euler_phi(d)));
    }
    return tr;
}

Rational hermitian_trace(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.is_zero() || b.is_zero()) return Rational();
    const u64 L = nt::lcm(a.conductor(), b.conductor());
    const u64 fa = L / a.conductor(), fb = L / b.conductor();
    // coefficient of zeta_L^k in a * conj(b), then the mean of zeta_L^k over conjugates
    const std::size_t na = a.terms().size(), nb = b.terms().size();
    if (na * nb > 8 * L) {
        // Dense inputs: the mean of zeta_L^k depends only on gcd(k, L), so write it as
        // sum_{e | gcd(k, L)} g(e) and sum residue-class totals for each divisor e.
        thread_local std::unordered_map<u64, std::vector<std::pair<u64, Rational>>> kernels;
        auto [kit, fresh] = kernels.try_emplace(L);
        if (fresh) {
            auto F = [L](u64 t) {
                const u64 d = L / t;
                const int mu = nt::mobius(d);
                return mu == 0 ? Rational() : Rational(mu, static_cast<std::int64_t>(nt::euler_phi(d)));
            };
            for (u64 e : nt::divisors(L)) {
                Rational g;
                for (u64 t : nt::divisors(e)) {
                    const int mu = nt::mobius(e / t);
                    if (mu != 0) g += F(t) * Rational(mu);
                }
                if (!g.is_zero()) kit->second.emplace_back(e, g);
            }
        }
        Rational out;
        std::vector<Rational> A, B;
        for (const auto& [e, g] : kit->second) {
            A.assign(e, Rational());
            B.assign(e, Rational());
            for (const auto& t : a.terms()) A[t.exp * fa % e] += t.coeff;
            for (const auto& t : b.terms()) B[t.exp * fb % e] += t.coeff;
            Rational s;
            for (u64 r = 0; r < e; ++r)
                if (!A[r].is_zero() && !B[r].is_zero()) s += A[r] * B[r];
            out += s * g;
        }
        return out;
    }
    thread_local std::vector<Rational> acc;
    thread_local std::vector<u64> touched;
    if (acc.size() < L) acc.resize(L);
    touched.clear();
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            u64 k = (ta.exp * fa + L - tb.exp * fb % L) % L;
            if (acc[k].is_zero()) touched.push_back(k);
            acc[k] += ta.coeff * tb.coeff;
        }
    thread_local std::unordered_map<u64, Rational> mean_by_order;  // mu(d) / phi(d)
    Rational out;
    for (u64 k : touched) {
        if (acc[k].is_zero()) continue;
        u64 d = L / nt::gcd(k, L);
        auto [it, fresh] = mean_by_order.try_emplace(d);
        if (fresh) {
            int mu = nt::mobius(d);
            it->second = mu == 0 ? Rational() : Rational(mu, static_cast<std::int64_t>(nt::euler_phi(d)));
        }
        if (!it->second.is_zero()) out += acc[k] * it->second;
        acc[k] = Rational();
    }
    return out;
}

namespace {

bool subgroup_member(const std::vector<u64>& sorted, u64 k) { return std::binary_search(sorted.begin(), sorted.end(), k); }

std::vector<u64> units_mod(u64 m) {
    if (m == 1) return {1};
    std::vector<u64> out;
    for (u64 k = 1; k < m; ++k)
        if (nt::gcd(k, m) == 1) out.push_back(k);
    return out;
}

// Greedy generating set of a subgroup of (Z/m)^x given as a sorted list.
std::vector<u64> subgroup_generators(const std::vector<u64>& group, u64 m) {
    std::vector<u64> gens;
    std::unordered_set<u64> span{1};
    for (u64 k : group) {
        if (span.count(k)) continue;
        gens.push_back(k);
        std::vector<u64> current(span.begin(), span.end());
        u64 power = k;
        while (!span.count(power)) {
            for (u64 h : current) span.insert(nt::mulmod(h, power, m));
            power = nt::mulmod(power, k, m);
        }
    }
    return gens;
}

}  // namespace

AbelianField::AbelianField(u64 conductor, std::vector<u64> stabilizer) {
    if (conductor == 0) throw InputError("field conductor must be positive");
    u64 m = conductor;
    std::vector<u64> S;
    if (m == 1) {
        S = {1};
    } else {
        for (u64 k : stabilizer) {
            u64 r = k % m;
            if (nt::gcd(r, m) != 1) throw InputError("stabilizer residue " + std::to_string(k) + " is not a unit");
            S.push_back(r);
        }
        std::sort(S.begin(), S.end());
        S.erase(std::unique(S.begin(), S.end()), S.end());
        if (!subgroup_member(S, 1)) throw InputError("stabilizer must contain 1");
        for (u64 a : S)
            for (u64 b : S)
                if (!subgroup_member(S, nt::mulmod(a, b, m)))
                    throw InputError("stabilizer is not closed under multiplication");
    }
    // descend to the minimal conductor
    bool changed = true;
    while (changed && m > 1) {
        changed = false;
        for (u64 l : nt::prime_factors(m)) {
            u64 m2 = m / l;
            bool contains_kernel = true;
            for (u64 i = 0; i < l && contains_kernel; ++i) {
                u64 k = (1 + i * m2) % m;
                if (nt::gcd(k, m) == 1 && !subgroup_member(S, k)) contains_kernel = false;
            }
            if (!contains_kernel) continue;
            std::vector<u64> S2;
            if (m2 == 1) {
                S2 = {1};
            } else {
                for (u64 k : S) S2.push_back(k % m2);
                std::sort(S2.begin(), S2.end());
                S2.erase(std::unique(S2.begin(), S2.end()), S2.end());
            }
            S = std::move(S2);
            m = m2;
            changed = true;
            break;
        }
    }
    conductor_ = m;
    stabilizer_ = std::move(S);
}

AbelianField AbelianField::cyclotomic(u64 m) { return AbelianField(m, {1}); }

u64 AbelianField::degree() const { return nt::euler_phi(conductor_) / stabilizer_.size(); }

std::vector<u64> AbelianField::stabilizer_at(u64 m) const {
    if (m % conductor_ != 0) throw InputError("stabilizer_at needs a multiple of the conductor");
    std::vector<u64> out;
    for (u64 k : units_mod(m))
        if (conductor_ == 1 || subgroup_member(stabilizer_, k % conductor_)) out.push_back(k);
    return out;
}

bool AbelianField::contains(const CyclotomicNumber& x) const {
    u64 M = nt::lcm(conductor_, x.conductor());
    for (u64 g : subgroup_generators(stabilizer_at(M), M))
        if (x.galois(static_cast<std::int64_t>(g % x.conductor())) != x) return false;
    return true;
}

AbelianField AbelianField::compositum(const AbelianField& other) const {
    u64 M = nt::lcm(conductor_, other.conductor_);
    auto a = stabilizer_at(M), b = other.stabilizer_at(M);
    std::vector<u64> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    return AbelianField(M, both);
}

AbelianField field_of_values(const std::vector<CyclotomicNumber>& values) {
    if (values.empty()) throw InputError("field_of_values needs at least one value");
    std::unordered_set<CyclotomicNumber> seen;
    std::vector<CyclotomicNumber> distinct;
    u64 m = 1;
    for (const auto& v : values) {
        if (v.is_rational() || !seen.insert(v).second) continue;
        distinct.push_back(v);
        m = nt::lcm(m, v.conductor());
    }
    if (m == 1) return AbelianField::rationals();
    check_conductor(m);
    // Larger conductors first: they tend to cut the candidate group down fastest.
    std::stable_sort(distinct.begin(), distinct.end(),
                     [](const auto& a, const auto& b) { return a.conductor() > b.conductor(); });

    std::vector<u64> S = units_mod(m);
    std::vector<u64> gens = subgroup_generators(S, m);
    for (const auto& v : distinct) {
        const u64 mv = v.conductor();
        auto fixes = [&](u64 k) { return v.galois(static_cast<std::int64_t>(k % mv)) == v; };
        if (std::all_of(gens.begin(), gens.end(), fixes)) continue;
        std::unordered_map<u64, bool> verdict;
        std::vector<u64> kept;
        for (u64 k : S) {
            auto [it, fresh] = verdict.try_emplace(k % mv, false);
            if (fresh) it->second = fixes(k);
            if (it->second) kept.push_back(k);
        }
        S = std::move(kept);
        gens = subgroup_generators(S, m);
    }
    return AbelianField(m, S);
}

}  // namespace schurgate
