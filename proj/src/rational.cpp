#include "schurgate/rational.hpp"

#include <functional>
#include <numeric>

#include "schurgate/error.hpp"

namespace schurgate {

namespace {

using i128 = __int128;

bool fits(i128 v) { return v > static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX); }

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw ArithmeticError("zero denominator");
    mpq_class q(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
    q.canonicalize();
    assign(q);
}

void Rational::promote() {
    if (big_) return;
    big_ = std::make_unique<mpq_class>(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
    n_ = 0;
    d_ = 1;
}

void Rational::assign(const mpq_class& q) {
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (num.fits_slong_p() && den.fits_slong_p() && num.get_si() != INT64_MIN) {
        n_ = num.get_si();
        d_ = den.get_si();
        big_.reset();
    } else {
        n_ = 0;
        d_ = 1;
        big_ = std::make_unique<mpq_class>(q);
    }
}

Rational Rational::parse(std::string_view s) {
    std::string str(s);
    auto bad = [&] { return InputError("malformed rational: '" + str + "'"); };
    if (str.empty()) throw bad();
    auto valid_int = [](std::string_view t) {
        if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto slash = str.find('/');
    std::string num = str.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') throw bad();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0) throw ArithmeticError("zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(n_)); }
mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(d_)); }

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(n_) / static_cast<double>(d_);
}

std::string Rational::str() const {
    if (big_) return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    return std::to_string(n_) + "/" + std::to_string(d_);
}

std::size_t Rational::hash() const {
    if (big_) return std::hash<std::string>{}(str());
    std::size_t h = std::hash<std::int64_t>{}(n_);
    return h ^ (std::hash<std::int64_t>{}(d_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Rational Rational::operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero");
    if (big_) return Rational(mpq_class(1 / *big_));
    Rational r;
    r.n_ = n_ < 0 ? -d_ : d_;
    r.d_ = n_ < 0 ? -n_ : n_;
    return r;
}

Rational& Rational::add_slow(const Rational& o, bool subtract) {
    if (!big_ && !o.big_) {
        i128 on = subtract ? -static_cast<i128>(o.n_) : static_cast<i128>(o.n_);
        i128 num = static_cast<i128>(n_) * o.d_ + on * d_;
        i128 den = static_cast<i128>(d_) * o.d_;
        i128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
        if (fits(num) && fits(den)) {
            n_ = static_cast<std::int64_t>(num);
            d_ = static_cast<std::int64_t>(den);
            return *this;
        }
    }
    mpq_class r = subtract ? mpq_class(to_mpq() - o.to_mpq()) : mpq_class(to_mpq() + o.to_mpq());
    assign(r);
    return *this;
}

Rational& Rational::mul_slow(const Rational& o) {
    if (!big_ && !o.big_) {
        i128 num = static_cast<i128>(n_) * o.n_;
        i128 den = static_cast<i128>(d_) * o.d_;
        i128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
        if (fits(num) && fits(den)) {
            n_ = static_cast<std::int64_t>(num);
            d_ = static_cast<std::int64_t>(den);
            return *this;
        }
    }
    mpq_class r = to_mpq() * o.to_mpq();
    assign(r);
    return *this;
}

bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return static_cast<i128>(a.n_) * b.d_ < static_cast<i128>(b.n_) * a.d_;
    return a.to_mpq() < b.to_mpq();
}

}  // namespace schurgate
