#include "schurgate/numtheory.hpp"

#include <algorithm>
#include <numeric>

#include "schurgate/error.hpp"

namespace schurgate::nt {

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    u64 g = gcd(a, b);
    u64 r;
    if (__builtin_mul_overflow(a / g, b, &r)) throw ArithmeticError("lcm overflow");
    return r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 ipow(u64 base, unsigned exp) {
    u64 r = 1;
    for (unsigned i = 0; i < exp; ++i)
        if (__builtin_mul_overflow(r, base, &r)) throw ArithmeticError("integer power overflow");
    return r;
}

u64 inverse_mod(u64 a, u64 m) {
    if (m == 1) return 0;
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        std::tie(t, nt) = std::pair{nt, t - q * nt};
        std::tie(r, nr) = std::pair{nr, r - q * nr};
    }
    if (r != 1) throw ArithmeticError("residue is not invertible");
    return mod(t, m);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

int mobius(u64 n) {
    int s = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        s = -s;
    }
    return s;
}

u64 radical(u64 n) {
    u64 r = 1;
    for (auto [p, e] : factorize(n)) r *= p;
    return r;
}

unsigned valuation(u64 n, u64 p) {
    if (n == 0) return 0;
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

u64 multiplicative_order(u64 a, u64 m) {
    if (m == 1) return 1;
    if (gcd(a % m, m) != 1) throw ArithmeticError("order of a non-unit");
    u64 ord = euler_phi(m);
    for (auto [p, e] : factorize(ord)) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(a, ord / p, m) == 1)
                ord /= p;
            else
                break;
        }
    }
    return ord;
}

int prime_power_exponent(u64 n, u64 p) {
    if (n == 0 || p < 2) return -1;
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return n == 1 ? k : -1;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> sieve(n + 1, true);
    for (u64 i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (u64 k = i * i; k <= n; k += i) sieve[k] = false;
    }
    return out;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> ds{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = ds.size();
        u64 pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t k = 0; k < base; ++k) ds.push_back(ds[k] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

namespace {

// Element of (Z/m)^x of maximal order for m = p^e (p odd) or m in {2, 4}; for 2^e, e >= 3,
// the group is C2 x C_{2^{e-2}} and two generators are returned.
std::vector<u64> prime_power_unit_generators(u64 p, unsigned e) {
    u64 m = ipow(p, e);
    if (p == 2) {
        if (e == 1) return {};
        if (e == 2) return {3};
        return {m - 1, 5};
    }
    u64 phi = m / p * (p - 1);
    for (u64 g = 2; g < m; ++g) {
        if (g % p == 0) continue;
        if (multiplicative_order(g, m) == phi) return {g};
    }
    return {};
}

}  // namespace

std::vector<u64> unit_group_generators(u64 m) {
    std::vector<u64> gens;
    if (m <= 2) return gens;
    for (auto [p, e] : factorize(m)) {
        u64 pe = ipow(p, e);
        u64 rest = m / pe;
        for (u64 g : prime_power_unit_generators(p, e)) {
            // CRT lift: t = g mod p^e, t = 1 mod the cofactor
            u64 t = g % m;
            if (rest != 1) {
                u64 a = mulmod(g % pe, mulmod(rest, inverse_mod(rest % pe, pe), m), m);
                u64 b = mulmod(pe, inverse_mod(pe % rest, rest), m);
                t = (a + b) % m;
            }
            gens.push_back(t);
        }
    }
    return gens;
}

}  // namespace schurgate::nt
