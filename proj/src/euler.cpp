#include "schurgate/euler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "schurgate/error.hpp"
#include "schurgate/numtheory.hpp"

namespace schurgate {

using nt::u64;

Series series_mul(const Series& a, const Series& b, std::size_t terms) {
    Series out(std::min(terms, a.size() + b.size() - 1));
    for (std::size_t k = 0; k < out.size(); ++k) {
        CyclotomicSum sum;
        for (std::size_t i = 0; i <= k && i < a.size(); ++i)
            if (k - i < b.size() && !a[i].is_zero() && !b[k - i].is_zero()) sum.add(a[i] * b[k - i]);
        out[k] = sum.value();
    }
    return out;
}

Series series_inverse(const Series& a, std::size_t terms) {
    if (a.empty() || a[0] != CyclotomicNumber(1)) throw InputError("series inverse needs constant term 1");
    Series out(terms);
    if (terms == 0) return out;
    out[0] = CyclotomicNumber(1);
    for (std::size_t k = 1; k < terms; ++k) {
        CyclotomicSum sum;
        for (std::size_t i = 1; i <= k && i < a.size(); ++i)
            if (!a[i].is_zero() && !out[k - i].is_zero()) sum.add(a[i] * out[k - i], Rational(-1));
        out[k] = sum.value();
    }
    return out;
}

Series series_exp(const Series& log, std::size_t terms) {
    if (!log.empty() && !log[0].is_zero()) throw InputError("series exp needs constant term 0");
    Series out(terms);
    if (terms == 0) return out;
    out[0] = CyclotomicNumber(1);
    // k E_k = sum_{i=1}^{k} i L_i E_{k-i}
    for (std::size_t k = 1; k < terms; ++k) {
        CyclotomicSum sum;
        for (std::size_t i = 1; i <= k && i < log.size(); ++i)
            if (!log[i].is_zero() && !out[k - i].is_zero())
                sum.add(log[i] * out[k - i], Rational(static_cast<std::int64_t>(i), static_cast<std::int64_t>(k)));
        out[k] = sum.value();
    }
    return out;
}

Series series_pow(const Series& a, std::int64_t k, std::size_t terms) {
    Series base = a;
    if (k < 0) {
        base = series_inverse(a, terms);
        k = -k;
    }
    Series result{CyclotomicNumber(1)};
    for (; k; k >>= 1) {
        if (k & 1) result = series_mul(result, base, terms);
        if (k > 1) base = series_mul(base, base, terms);
    }
    result.resize(std::max<std::size_t>(std::min(terms, result.size()), 1));
    return result;
}

std::vector<RootOfUnity> eigenvalues_at(const Character& chi, std::size_t cls) {
    const auto& G = chi.group();
    const auto& c = G.classes().at(cls);
    const auto& prov = chi.provenance();
    switch (prov.kind) {
        case Provenance::Kind::OneDimensional:
            return {RootOfUnity::make(nt::mulmod(prov.exponent, c.rep.y, G.pn()), G.pn())};
        case Provenance::Kind::Induced:
        case Provenance::Kind::LiftedFromQuotient:
            if (prov.psi.u % G.q() == 0) break;
            return monomial_model(chi.group_ptr(), prov.psi).at(c.rep).eigenvalues();
        case Provenance::Kind::Regular:
        case Provenance::Kind::Permutation: {
            // cycles of length l on the permuted set: (1/l) sum_{d | l} mu(l/d) chi(g^d)
            std::vector<RootOfUnity> out;
            for (u64 l : nt::divisors(c.order)) {
                std::int64_t count = 0;
                for (u64 d : nt::divisors(l)) {
                    auto fixed = chi[G.power_class(cls, d)].rational_value();
                    if (!fixed || !fixed->small_integer()) throw InvariantViolation("permutation character value is not an integer");
                    count += nt::mobius(l / d) * *fixed->small_integer();
                }
                if (count % static_cast<std::int64_t>(l) != 0) throw InvariantViolation("inconsistent permutation character");
                for (std::int64_t i = 0; i < count / static_cast<std::int64_t>(l); ++i)
                    for (u64 t = 0; t < l; ++t) out.push_back(RootOfUnity::make(t, l));
            }
            std::sort(out.begin(), out.end());
            return out;
        }
        case Provenance::Kind::Composite: break;
    }
    throw InputError("eigenvalues are only available for linear, induced, permutation and regular characters");
}

EulerFactor twisted_euler_factor(std::int64_t a_v, u64 v, const Character& chi, std::size_t cls) {
    EulerFactor f;
    f.v = v;
    f.poly = {CyclotomicNumber(1)};
    const CyclotomicNumber a(a_v), vv(static_cast<std::int64_t>(v));
    for (const auto& l : eigenvalues_at(chi, cls)) {
        CyclotomicNumber z = l.value();
        Series local{CyclotomicNumber(1), -(z * a), z * z * vv};
        f.poly = series_mul(f.poly, local, f.poly.size() + 2);
    }
    return f;
}

double reciprocal_root_defect(std::int64_t a_v, u64 v, const std::vector<RootOfUnity>& eigenvalues, const Series& poly) {
    using cd = std::complex<double>;
    const double a = static_cast<double>(a_v), vv = static_cast<double>(v);
    const cd disc = std::sqrt(cd(a * a - 4 * vv, 0));
    const cd alpha = (a + disc) / 2.0, beta = (a - disc) / 2.0;
    double defect = 0;
    std::vector<cd> prod{1.0};
    for (const auto& l : eigenvalues) {
        const double t = 2 * std::numbers::pi * static_cast<double>(l.num) / static_cast<double>(l.den);
        const cd z(std::cos(t), std::sin(t));
        for (cd g : {z * alpha, z * beta}) {
            defect = std::max(defect, std::abs(std::abs(g) - std::sqrt(vv)));
            std::vector<cd> next(prod.size() + 1, 0.0);
            for (std::size_t i = 0; i < prod.size(); ++i) {
                next[i] += prod[i];
                next[i + 1] -= g * prod[i];
            }
            prod = std::move(next);
        }
    }
    if (prod.size() != poly.size()) return std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < prod.size(); ++i) {
        const double scale = std::max(1.0, std::abs(prod[i]));
        defect = std::max(defect, std::abs(prod[i] - poly[i].approx()) / scale);
    }
    return defect;
}

Series newton_local_series(std::int64_t a_v, u64 v, const MetacyclicGroup& G, const std::vector<CyclotomicNumber>& values,
                           std::size_t cls, std::size_t terms) {
    Series log(terms);
    // s_k = alpha^k + beta^k
    mpz_class s_prev = 2, s = a_v;
    const mpz_class vz = static_cast<unsigned long>(v);
    for (std::size_t k = 1; k < terms; ++k) {
        if (k > 1) {
            mpz_class next = a_v * s - vz * s_prev;
            s_prev = s;
            s = next;
        }
        const auto& val = values[G.power_class(cls, k)];
        if (!val.is_zero()) log[k] = val * CyclotomicNumber(Rational(mpq_class(s, static_cast<unsigned long>(k))));
    }
    return series_exp(log, terms);
}

namespace {

std::size_t local_terms(u64 v, u64 X) {
    std::size_t t = 1;
    for (u64 pk = v; pk <= X; pk *= v) {
        ++t;
        if (pk > X / v) break;
    }
    return t;
}

DirichletSeries assemble(u64 X, const std::vector<std::pair<u64, Series>>& local) {
    DirichletSeries out;
    out.X = X;
    out.an.assign(X, CyclotomicNumber());
    if (X == 0) return out;
    std::vector<const Series*> by_prime(X + 1, nullptr);
    for (const auto& [v, s] : local) by_prime[v] = &s;
    std::vector<u64> spf(X + 1, 0);
    for (u64 i = 2; i <= X; ++i)
        if (spf[i] == 0)
            for (u64 k = i; k <= X; k += i)
                if (spf[k] == 0) spf[k] = i;
    out.an[0] = CyclotomicNumber(1);
    for (u64 n = 2; n <= X; ++n) {
        u64 v = spf[n], m = n;
        std::size_t k = 0;
        while (m % v == 0) {
            m /= v;
            ++k;
        }
        const Series* s = by_prime[v];
        if (!s || k >= s->size() || (*s)[k].is_zero()) continue;
        out.an[n - 1] = (*s)[k] * out.an[m - 1];
    }
    return out;
}

std::string class_list(const MetacyclicGroup& G, const std::vector<std::size_t>& classes) {
    std::string s;
    for (auto c : classes) {
        const auto& rep = G.classes()[c].rep;
        s += (s.empty() ? "" : ", ") + std::string("a^") + std::to_string(rep.x) + " b^" + std::to_string(rep.y);
    }
    return s;
}

}  // namespace

DirichletSeries dirichlet_partial(const EllipticCurve& E, const FrobeniusSource& frob, const LocalSeriesFn& local, u64 X) {
    if (X == 0 || X > kMaxSeriesBound) throw InputError("series bound must lie in [1, 100000]");
    std::vector<std::pair<u64, Series>> factors;
    for (u64 v : nt::primes_up_to(X)) {
        if (!E.good_at(v)) continue;
        auto datum = frob(v);
        if (!datum) continue;
        const std::size_t terms = local_terms(v, X);
        const std::int64_t a_v = trace_of_frobenius(E, v);
        Series s = local(a_v, v, datum->candidates.front(), terms);
        for (std::size_t i = 1; i < datum->candidates.size(); ++i)
            if (local(a_v, v, datum->candidates[i], terms) != s)
                throw InputError("Frobenius at " + std::to_string(v) + " is not determined by the field polynomial (" +
                                 std::to_string(datum->candidates.size()) +
                                 " candidate classes) and the local factor depends on it; use a character constant on those "
                                 "classes or a smaller bound");
        factors.emplace_back(v, std::move(s));
    }
    return assemble(X, factors);
}

DirichletSeries dirichlet_partial(const EllipticCurve& E, const Character& chi, const FrobeniusSource& frob, u64 X) {
    const Character& c = chi;
    return dirichlet_partial(E, frob, [&c](std::int64_t a, u64 v, std::size_t cls, std::size_t terms) {
        return series_inverse(twisted_euler_factor(a, v, c, cls).poly, terms);
    }, X);
}

DirichletSeries dirichlet_partial(const EllipticCurve& E, const VirtualCharacter& chi, const FrobeniusSource& frob, u64 X) {
    if (chi.terms().empty()) throw InputError("empty virtual character");
    const MetacyclicGroup& G = chi.terms().front().second.group();
    const auto values = chi.values();
    return dirichlet_partial(E, frob, [&](std::int64_t a, u64 v, std::size_t cls, std::size_t terms) {
        return newton_local_series(a, v, G, values, cls, terms);
    }, X);
}

DirichletSeries untwisted_coefficients(const EllipticCurve& E, u64 X) {
    if (X == 0 || X > kMaxSeriesBound) throw InputError("series bound must lie in [1, 100000]");
    std::vector<std::pair<u64, Series>> factors;
    for (u64 v : nt::primes_up_to(X)) {
        if (!E.good_at(v)) continue;
        const std::int64_t a = trace_of_frobenius(E, v);
        const std::int64_t vv = static_cast<std::int64_t>(v);
        Series s{CyclotomicNumber(1)};
        std::int64_t prev = 1, cur = a;
        for (std::size_t k = 1; k < local_terms(v, X); ++k) {
            s.push_back(CyclotomicNumber(cur));
            std::int64_t next = a * cur - vv * prev;
            prev = cur;
            cur = next;
        }
        factors.emplace_back(v, std::move(s));
    }
    return assemble(X, factors);
}

IdentityCheck quotient_identity_series(const EllipticCurve& E, const IntPoly& f, const GroupPtr& G, u64 X) {
    auto table = irreducible_characters(G);
    auto qi = quotient_identity(G, table);
    auto faithful = faithful_characters(table);
    auto frob = field_frobenius_source(f, *G);

    IdentityCheck check;
    check.X = X;
    check.multiplicity = qi.multiplicity;
    for (u64 v : nt::primes_up_to(X)) {
        if (!E.good_at(v)) continue;
        auto d = frob(v);
        if (!d) continue;
        ++check.good_primes;
        if (d->ambiguous()) ++check.ambiguous_primes;
    }
    DirichletSeries lhs = dirichlet_partial(E, qi.lhs, frob, X);
    const std::int64_t m = qi.multiplicity;
    DirichletSeries rhs = dirichlet_partial(E, frob, [&](std::int64_t a, u64 v, std::size_t cls, std::size_t terms) {
        Series prod{CyclotomicNumber(1)};
        for (const auto& tau : faithful) {
            auto fac = twisted_euler_factor(a, v, tau, cls).poly;
            prod = series_mul(prod, fac, prod.size() + fac.size() - 1);
        }
        return series_pow(prod, -m, terms);
    }, X);
    check.holds = true;
    for (u64 k = 0; k < X; ++k)
        if (lhs.an[k] != rhs.an[k]) {
            check.holds = false;
            check.first_mismatch = k + 1;
            break;
        }
    return check;
}

SymPoly sym_add(const SymPoly& a, const SymPoly& b) {
    SymPoly out = a;
    for (const auto& [e, c] : b) {
        auto& slot = out[e];
        slot = slot + c;
        if (slot.is_zero()) out.erase(e);
    }
    return out;
}

SymPoly sym_mul(const SymPoly& a, const SymPoly& b) {
    SymPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::array<unsigned, 2> e{ea[0] + eb[0], ea[1] + eb[1]};
            auto& slot = out[e];
            slot = slot + ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

namespace {

SymPoly sym_scale(const SymPoly& a, const CyclotomicNumber& s) {
    SymPoly out;
    if (s.is_zero()) return out;
    for (const auto& [e, c] : a) out[e] = c * s;
    return out;
}

SymSeries sym_trunc_mul(const SymSeries& a, const SymSeries& b, std::size_t terms) {
    SymSeries out(std::min(terms, a.size() + b.size() - 1));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j) out[i + j] = sym_add(out[i + j], sym_mul(a[i], b[j]));
    return out;
}

void sym_trim(SymSeries& s) {
    while (!s.empty() && s.back().empty()) s.pop_back();
}

SymPoly one() { return SymPoly{{{0, 0}, CyclotomicNumber(1)}}; }

}  // namespace

SymSeries sym_series_mul(const SymSeries& a, const SymSeries& b) {
    if (a.empty() || b.empty()) return {};
    return sym_trunc_mul(a, b, a.size() + b.size() - 1);
}

bool sym_equal(const SymSeries& a, const SymSeries& b) {
    SymSeries x = a, y = b;
    sym_trim(x);
    sym_trim(y);
    return x == y;
}

SymSeries symbolic_twisted_factor(const Character& chi, std::size_t cls) {
    SymSeries out{one()};
    for (const auto& l : eigenvalues_at(chi, cls)) {
        CyclotomicNumber z = l.value();
        SymSeries local{one(), SymPoly{{{1, 0}, -z}}, SymPoly{{{0, 1}, z * z}}};
        out = sym_series_mul(out, local);
    }
    return out;
}

SymSeries product_form(u64 q, const std::vector<u64>& exponents) {
    SymSeries out{one()};
    for (u64 t : exponents) {
        CyclotomicNumber z = CyclotomicNumber::zeta(q, static_cast<std::int64_t>(t));
        out = sym_series_mul(out, SymSeries{one(), SymPoly{{{1, 0}, -z}}});  // 1 - zeta^t alpha T
        out = sym_series_mul(out, SymSeries{one(), SymPoly{{{0, 1}, -z}}});  // 1 - zeta^t beta T
    }
    return out;
}

SymSeries to_alpha_beta(const SymSeries& av) {
    const SymPoly a{{{1, 0}, CyclotomicNumber(1)}, {{0, 1}, CyclotomicNumber(1)}};
    const SymPoly v{{{1, 1}, CyclotomicNumber(1)}};
    SymSeries out;
    for (const auto& coeff : av) {
        SymPoly sum;
        for (const auto& [e, c] : coeff) {
            SymPoly term{{{0, 0}, c}};
            for (unsigned i = 0; i < e[0]; ++i) term = sym_mul(term, a);
            for (unsigned i = 0; i < e[1]; ++i) term = sym_mul(term, v);
            sum = sym_add(sum, term);
        }
        out.push_back(sum);
    }
    return out;
}

bool is_cube(const SymSeries& f_in) {
    SymSeries f = f_in;
    sym_trim(f);
    if (f.empty() || f[0] != one()) throw InputError("cube test needs constant term 1");
    const std::size_t deg = f.size() - 1;
    if (deg % 3 != 0) return false;
    const std::size_t terms = deg / 3 + 1;
    // R = exp(log(f) / 3) to degree deg / 3, with (log f)' = f' / f
    SymSeries inv(terms);  // 1/f mod T^terms
    inv[0] = one();
    for (std::size_t k = 1; k < terms; ++k) {
        SymPoly sum;
        for (std::size_t i = 1; i <= k && i < f.size(); ++i) sum = sym_add(sum, sym_mul(f[i], inv[k - i]));
        inv[k] = sym_scale(sum, CyclotomicNumber(-1));
    }
    SymSeries df;
    for (std::size_t i = 1; i < f.size(); ++i) df.push_back(sym_scale(f[i], CyclotomicNumber(static_cast<std::int64_t>(i))));
    SymSeries dlog = sym_trunc_mul(df, inv, terms);
    // L_k = dlog_{k-1} / k; R = exp(L / 3)
    SymSeries L(terms);
    for (std::size_t k = 1; k < terms; ++k)
        if (k - 1 < dlog.size()) L[k] = sym_scale(dlog[k - 1], CyclotomicNumber(Rational(1, 3 * static_cast<std::int64_t>(k))));
    SymSeries R(terms);
    R[0] = one();
    for (std::size_t k = 1; k < terms; ++k) {
        SymPoly sum;
        for (std::size_t i = 1; i <= k; ++i)
            sum = sym_add(sum, sym_scale(sym_mul(L[i], R[k - i]), CyclotomicNumber(Rational(static_cast<std::int64_t>(i), static_cast<std::int64_t>(k)))));
        R[k] = sum;
    }
    return sym_equal(sym_series_mul(sym_series_mul(R, R), R), f);
}

std::string series_str(const Series& s) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k].is_zero()) continue;
        bool negative = s[k].is_rational() && s[k].rational_value()->sign() < 0;
        std::string c = negative ? (-s[k]).to_string() : s[k].to_string();
        bool compound = s[k].terms().size() > 1 || c[0] == '-';
        if (!first)
            os << (negative ? " - " : " + ");
        else if (negative)
            os << "-";
        first = false;
        if (k == 0) {
            os << c;
            continue;
        }
        if (compound)
            os << "(" << c << ")*";
        else if (c != "1")
            os << c << "*";
        os << "T" << (k > 1 ? "^" + std::to_string(k) : "");
    }
    return first ? "0" : os.str();
}

std::string sym_series_str(const SymSeries& s, const std::array<std::string, 2>& vars) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < s.size(); ++k)
        for (const auto& [e, c] : s[k]) {
            if (!first) os << " + ";
            first = false;
            std::string cs = c.to_string();
            os << (c.terms().size() > 1 ? "(" + cs + ")" : cs);
            for (int i = 0; i < 2; ++i)
                if (e[i]) os << "*" << vars[i] << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
            if (k) os << "*T" << (k > 1 ? "^" + std::to_string(k) : "");
        }
    return first ? "0" : os.str();
}

}  // namespace schurgate
