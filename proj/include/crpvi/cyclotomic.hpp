#pragma once

// Exact arithmetic in the cyclotomic fields Q(zeta_n).
//
// An element is stored in the power basis 1, z, ..., z^(phi(n)-1) of
// Q[z]/Phi_n(z). Within one conductor the coefficient vector is unique, so
// same-conductor equality is coefficient equality. Mixed-conductor operands
// are lifted to the lcm of their conductors; results stay there. normalized()
// descends to the smallest conductor containing the value and is what
// equality keys and serialization use.

#include "crpvi/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace crpvi {

namespace detail {

struct CycloField {
    unsigned n = 1;
    unsigned phi = 1;
    std::vector<long> poly;  // Phi_n, low degree first, monic, size phi + 1
};

inline std::vector<unsigned> divisors(unsigned n) {
    std::vector<unsigned> d;
    for (unsigned k = 1; k <= n; ++k)
        if (n % k == 0) d.push_back(k);
    return d;
}

inline unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// Exact division of integer polynomials by a monic divisor.
inline std::vector<long> divide_monic(std::vector<long> num, const std::vector<long>& den) {
    const std::size_t dd = den.size() - 1;
    std::vector<long> q(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
        long c = num[i];
        q[i - dd] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    return q;
}

const CycloField& cyclo_field(unsigned n);

inline std::vector<long> cyclotomic_polynomial(unsigned n) {
    std::vector<long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (unsigned d : divisors(n))
        if (d != n) p = divide_monic(std::move(p), cyclo_field(d).poly);
    return p;
}

inline const CycloField& cyclo_field(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic conductor must be positive");
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<CycloField>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    // Built outside the lock: construction recurses into smaller conductors.
    auto f = std::make_unique<CycloField>();
    f->n = n;
    f->phi = euler_phi(n);
    f->poly = cyclotomic_polynomial(n);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(n, std::move(f));
    return *it->second;
}

using QPoly = std::vector<Rational>;  // low degree first

inline void trim(QPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Reduce an arbitrary polynomial in z modulo Phi_n; result has size phi.
inline QPoly reduce_mod_cyclotomic(const CycloField& f, QPoly p) {
    const std::size_t phi = f.phi;
    for (std::size_t i = p.size(); i-- > phi;) {
        if (p[i].is_zero()) continue;
        const Rational c = p[i];
        for (std::size_t j = 0; j < phi; ++j) {
            if (f.poly[j] == 0) continue;
            Rational t = c;
            t.mul_int(f.poly[j]);
            p[i - phi + j] -= t;
        }
    }
    p.resize(phi);
    return p;
}

inline std::pair<QPoly, QPoly> poly_divmod(QPoly num, const QPoly& den) {
    if (den.empty()) throw std::domain_error("polynomial division by zero");
    trim(num);
    if (num.size() < den.size()) return {QPoly{}, num};
    QPoly q(num.size() - den.size() + 1);
    const Rational lead_inv = den.back().inverse();
    const long ds = static_cast<long>(den.size());
    for (long i = static_cast<long>(num.size()) - 1; i >= ds - 1; --i) {
        const auto ui = static_cast<std::size_t>(i);
        Rational c = num[ui] * lead_inv;
        if (!c.is_zero())
            for (std::size_t j = 0; j < den.size(); ++j) num[ui - den.size() + 1 + j] -= c * den[j];
        q[ui - den.size() + 1] = std::move(c);
    }
    num.resize(den.size() - 1);
    trim(num);
    trim(q);
    return {q, num};
}

inline QPoly poly_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
    // a - q*b
    QPoly r(std::max(a.size(), q.size() + b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
    trim(r);
    return r;
}

}  // namespace detail

class CycloNum {
public:
    CycloNum() : f_(&detail::cyclo_field(1)), c_(1) {}
    CycloNum(long v) : CycloNum(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    CycloNum(Rational v) : f_(&detail::cyclo_field(1)), c_{std::move(v)} {}  // NOLINT

    // Any-length polynomial in zeta_n; reduced on construction.
    static CycloNum from_poly(unsigned n, std::vector<Rational> poly) {
        const auto& f = detail::cyclo_field(n);
        CycloNum r;
        r.f_ = &f;
        r.c_ = fold_and_reduce(f, std::move(poly));
        return r;
    }

    static CycloNum root_of_unity(long n, long k) {
        if (n < 1) throw std::invalid_argument("root_of_unity: n must be >= 1");
        long e = ((k % n) + n) % n;
        std::vector<Rational> p(static_cast<std::size_t>(e) + 1);
        p[static_cast<std::size_t>(e)] = Rational(1);
        return from_poly(static_cast<unsigned>(n), std::move(p));
    }

    unsigned conductor() const { return f_->n; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
    }
    bool is_rational() const {
        return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return r.is_zero(); });
    }
    std::optional<Rational> rational_value() const {
        if (!is_rational()) return std::nullopt;
        return c_[0];
    }

    // Same value viewed in Q(zeta_m); m must be a multiple of the conductor.
    CycloNum lifted(unsigned m) const {
        if (m == conductor()) return *this;
        if (m % conductor() != 0) throw std::invalid_argument("lifted: target conductor is not a multiple");
        const unsigned step = m / conductor();
        const unsigned base = is_rational() ? 1 : (c_.size() - 1) * step + 1;
        std::vector<Rational> p(std::max(1u, base));
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (!c_[j].is_zero()) {
                if (j * step >= p.size()) p.resize(j * step + 1);
                p[j * step] = c_[j];
            }
        return from_poly(m, std::move(p));
    }

    // Smallest conductor d with the value in Q(zeta_d).
    CycloNum normalized() const {
        if (is_rational()) return CycloNum(c_[0]);
        for (unsigned d : detail::divisors(conductor())) {
            if (d == 1) continue;
            if (d == conductor()) break;
            if (auto r = try_descend(d)) return *r;
        }
        return *this;
    }

    CycloNum conj() const {
        std::vector<Rational> p(conductor());
        for (std::size_t j = 0; j < c_.size(); ++j) p[j == 0 ? 0 : conductor() - j] += c_[j];
        return from_poly(conductor(), std::move(p));
    }

    CycloNum inverse() const {
        if (is_zero()) throw std::domain_error("CycloNum: division by zero");
        if (is_rational()) return CycloNum(c_[0].inverse());
        detail::QPoly r0(f_->poly.begin(), f_->poly.end());
        detail::QPoly r1 = c_;
        detail::trim(r1);
        detail::QPoly s0, s1{Rational(1)};
        while (!r1.empty()) {
            auto [q, r] = detail::poly_divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            auto s2 = detail::poly_sub_mul(s0, q, s1);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 is a nonzero constant because Phi_n is irreducible.
        const Rational g = r0[0].inverse();
        for (auto& v : s0) v *= g;
        return from_poly(conductor(), std::move(s0));
    }

    CycloNum operator-() const {
        CycloNum r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
        if (a.f_ != b.f_) return binary_lifted(a, b, [](const CycloNum& x, const CycloNum& y) { return x + y; });
        CycloNum r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend CycloNum operator-(const CycloNum& a, const CycloNum& b) {
        if (a.f_ != b.f_) return binary_lifted(a, b, [](const CycloNum& x, const CycloNum& y) { return x - y; });
        CycloNum r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
        if (a.is_rational() || b.is_rational()) return scale_mixed(a, b);
        if (a.f_ != b.f_) return binary_lifted(a, b, [](const CycloNum& x, const CycloNum& y) { return x * y; });
        const std::size_t phi = a.c_.size();
        std::vector<Rational> p(2 * phi - 1);
        for (std::size_t i = 0; i < phi; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < phi; ++j)
                if (!b.c_[j].is_zero()) p[i + j] += a.c_[i] * b.c_[j];
        }
        CycloNum r;
        r.f_ = a.f_;
        r.c_ = detail::reduce_mod_cyclotomic(*a.f_, std::move(p));
        return r;
    }
    friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

    CycloNum& operator+=(const CycloNum& o) { return *this = *this + o; }
    CycloNum& operator-=(const CycloNum& o) { return *this = *this - o; }
    CycloNum& operator*=(const CycloNum& o) { return *this = *this * o; }
    CycloNum& operator/=(const CycloNum& o) { return *this = *this / o; }

    CycloNum pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycloNum result(1), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    friend bool operator==(const CycloNum& a, const CycloNum& b) {
        if (a.f_ == b.f_) return a.c_ == b.c_;
        const unsigned m = std::lcm(a.conductor(), b.conductor());
        return a.lifted(m).c_ == b.lifted(m).c_;
    }

    std::complex<double> to_complex() const {
        std::complex<double> s = 0.0;
        const double n = conductor();
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (!c_[j].is_zero())
                s += c_[j].to_double() * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / n);
        return s;
    }

    // Canonical text of the normalized value; equal values give equal keys.
    std::string key() const {
        const CycloNum v = normalized();
        std::string s = std::to_string(v.conductor()) + ":";
        for (std::size_t j = 0; j < v.c_.size(); ++j) {
            if (j) s += ',';
            s += v.c_[j].str();
        }
        return s;
    }

    // Hash of the raw coefficients. Consistent with == only among values of
    // the same conductor (the closure code keeps a common conductor).
    std::size_t raw_hash() const {
        std::size_t h = conductor();
        for (const auto& v : c_) h = h * 1000003u ^ v.hash();
        return h;
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloNum& a) {
        bool first = true;
        for (std::size_t j = 0; j < a.c_.size(); ++j) {
            if (a.c_[j].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            if (j == 0) {
                os << a.c_[j];
            } else {
                if (a.c_[j] != Rational(1)) os << "(" << a.c_[j] << ")*";
                os << "z" << a.conductor();
                if (j > 1) os << "^" << j;
            }
        }
        if (first) os << "0";
        return os;
    }

private:
    const detail::CycloField* f_;
    std::vector<Rational> c_;

    static std::vector<Rational> fold_and_reduce(const detail::CycloField& f, std::vector<Rational> p) {
        if (p.size() > f.n) {
            for (std::size_t i = f.n; i < p.size(); ++i)
                if (!p[i].is_zero()) p[i % f.n] += p[i];
            p.resize(f.n);
        }
        if (p.size() < f.phi) p.resize(f.phi);
        return detail::reduce_mod_cyclotomic(f, std::move(p));
    }

    template <class Op>
    static CycloNum binary_lifted(const CycloNum& a, const CycloNum& b, Op op) {
        const unsigned m = std::lcm(a.conductor(), b.conductor());
        return op(a.lifted(m), b.lifted(m));
    }

    static CycloNum scale_mixed(const CycloNum& a, const CycloNum& b) {
        const bool ar = a.is_rational();
        const CycloNum& num = ar ? b : a;
        const Rational s = ar ? a.c_[0] : b.c_[0];
        const unsigned m = std::lcm(a.conductor(), b.conductor());
        CycloNum r = num.lifted(m);
        for (auto& v : r.c_) v *= s;
        return r;
    }

    std::optional<CycloNum> try_descend(unsigned d) const {
        // Solve c = sum_j y_j zeta_d^j in the basis of Q(zeta_n).
        const auto& fd = detail::cyclo_field(d);
        const std::size_t rows = c_.size(), cols = fd.phi;
        std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
        for (std::size_t j = 0; j < cols; ++j) {
            const CycloNum basis = root_of_unity(conductor(), static_cast<long>(j * (conductor() / d)));
            for (std::size_t i = 0; i < rows; ++i) m[i][j] = basis.c_[i];
        }
        for (std::size_t i = 0; i < rows; ++i) m[i][cols] = c_[i];
        std::vector<std::size_t> pivot_col;
        std::size_t r = 0;
        for (std::size_t col = 0; col < cols && r < rows; ++col) {
            std::size_t piv = r;
            while (piv < rows && m[piv][col].is_zero()) ++piv;
            if (piv == rows) continue;
            std::swap(m[piv], m[r]);
            const Rational inv = m[r][col].inverse();
            for (std::size_t k = col; k <= cols; ++k) m[r][k] *= inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || m[i][col].is_zero()) continue;
                const Rational f = m[i][col];
                for (std::size_t k = col; k <= cols; ++k) m[i][k] -= f * m[r][k];
            }
            pivot_col.push_back(col);
            ++r;
        }
        for (std::size_t i = r; i < rows; ++i)
            if (!m[i][cols].is_zero()) return std::nullopt;
        std::vector<Rational> y(cols);
        for (std::size_t i = 0; i < r; ++i) y[pivot_col[i]] = m[i][cols];
        return CycloNum::from_poly(d, std::move(y));
    }
};

inline CycloNum root_of_unity(long n, long k) { return CycloNum::root_of_unity(n, k); }

// Exponent k/N in [0,1) with c = exp(2 pi i k/N). Throws if c is not a root
// of unity of Q(zeta_n) (those are the 2n-th roots for odd n, n-th otherwise).
inline Rational log_root_of_unity(const CycloNum& c) {
    const unsigned n = c.conductor();
    const long big = static_cast<long>(n % 2 == 0 ? n : 2 * n);
    const CycloNum z = root_of_unity(big, 1);
    CycloNum cur = CycloNum(1).lifted(static_cast<unsigned>(big));
    const CycloNum target = c.lifted(static_cast<unsigned>(big));
    for (long k = 0; k < big; ++k) {
        if (cur == target) return Rational(k, big);
        cur *= z;
    }
    throw std::domain_error("log_root_of_unity: value is not a root of unity");
}

}  // namespace crpvi
