#pragma once

// Exact rationals backed by GMP. Values are always reduced with a positive
// denominator; zero is 0/1.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crpvi {

class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long n, long d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(mpz_class(n), mpz_class(d));
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    // Accepts "a", "-a" or "a/b".
    static Rational parse(std::string_view text) {
        std::string s(text);
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        return Rational(std::move(q));
    }

    const mpq_class& raw() const { return v_; }

    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }
    std::string str() const { return v_.get_str(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }

    // Largest integer not exceeding the value.
    Rational floor() const {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return Rational(mpq_class(q));
    }
    // Representative in [0, 1).
    Rational frac() const { return *this - floor(); }
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }
    Rational& mul_int(long k) { v_ *= k; return *this; }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    std::size_t hash() const {
        std::size_t h = std::hash<long>{}(mpz_get_si(v_.get_num_mpz_t()));
        h ^= std::hash<long>{}(mpz_get_si(v_.get_den_mpz_t())) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h ^ static_cast<std::size_t>(mpz_size(v_.get_num_mpz_t()));
    }

private:
    mpq_class v_;
};

}  // namespace crpvi

template <>
struct std::hash<crpvi::Rational> {
    std::size_t operator()(const crpvi::Rational& r) const noexcept { return r.hash(); }
};
