#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace schurgate {

// Exact rational number. Values that fit a reduced int64 fraction are held inline;
// anything larger is promoted to an mpq_class and demoted again when it shrinks.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : n_(n) {
        if (n == INT64_MIN) promote();
    }
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const mpq_class& q) {
        mpq_class c(q);
        c.canonicalize();
        assign(c);
    }

    Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            n_ = o.n_;
            d_ = o.d_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    // Accepts "n", "n/d" with optional sign; throws InputError otherwise.
    static Rational parse(std::string_view s);

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
    int sign() const;

    // Inline integer value, if this is an integer that fits in int64.
    std::optional<std::int64_t> small_integer() const {
        if (!big_ && d_ == 1) return n_;
        return std::nullopt;
    }

    mpq_class to_mpq() const;
    mpz_class numerator() const;
    mpz_class denominator() const;
    double to_double() const;
    std::string str() const;  // always "num/den"
    std::size_t hash() const;

    Rational operator-() const;
    Rational inverse() const;  // throws ArithmeticError on zero

    Rational& operator+=(const Rational& o) {
        if (!big_ && !o.big_ && d_ == 1 && o.d_ == 1) {
            std::int64_t r;
            if (!__builtin_add_overflow(n_, o.n_, &r) && r != INT64_MIN) {
                n_ = r;
                return *this;
            }
        }
        return add_slow(o, false);
    }
    Rational& operator-=(const Rational& o) {
        if (!big_ && !o.big_ && d_ == 1 && o.d_ == 1) {
            std::int64_t r;
            if (!__builtin_sub_overflow(n_, o.n_, &r) && r != INT64_MIN) {
                n_ = r;
                return *this;
            }
        }
        return add_slow(o, true);
    }
    Rational& operator*=(const Rational& o) {
        if (!big_ && !o.big_ && d_ == 1 && o.d_ == 1) {
            std::int64_t r;
            if (!__builtin_mul_overflow(n_, o.n_, &r) && r != INT64_MIN) {
                n_ = r;
                return *this;
            }
        }
        return mul_slow(o);
    }
    Rational& operator/=(const Rational& o) { return *this *= o.inverse(); }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical: small and big never represent the same value
    }
    friend bool operator<(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void promote();
    void assign(const mpq_class& q);
    Rational& add_slow(const Rational& o, bool subtract);
    Rational& mul_slow(const Rational& o);

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::unique_ptr<mpq_class> big_;
};

}  // namespace schurgate
