#pragma once

// 3x3 matrices over cyclotomic fields, pseudo-reflection tests and
// spectra of finite-order elements.

#include "crpvi/cyclotomic.hpp"

#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace crpvi {

class Mat3 {
public:
    Mat3() = default;  // zero matrix
    explicit Mat3(std::array<CycloNum, 9> entries) : e_(std::move(entries)) {}

    static Mat3 identity() { return diag(1, 1, 1); }
    static Mat3 diag(const CycloNum& a, const CycloNum& b, const CycloNum& c) {
        Mat3 m;
        m(0, 0) = a;
        m(1, 1) = b;
        m(2, 2) = c;
        return m;
    }
    // Permutation matrix sending basis vector e_j to e_{perm[j]}.
    static Mat3 permutation(std::array<int, 3> perm) {
        Mat3 m;
        for (int j = 0; j < 3; ++j) m(perm[j], j) = 1;
        return m;
    }

    CycloNum& operator()(int i, int j) { return e_[static_cast<std::size_t>(3 * i + j)]; }
    const CycloNum& operator()(int i, int j) const { return e_[static_cast<std::size_t>(3 * i + j)]; }
    const std::array<CycloNum, 9>& entries() const { return e_; }

    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CycloNum s = a(i, 0) * b(0, j);
                s += a(i, 1) * b(1, j);
                s += a(i, 2) * b(2, j);
                r(i, j) = std::move(s);
            }
        return r;
    }
    friend Mat3 operator+(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (std::size_t k = 0; k < 9; ++k) r.e_[k] = a.e_[k] + b.e_[k];
        return r;
    }
    friend Mat3 operator-(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (std::size_t k = 0; k < 9; ++k) r.e_[k] = a.e_[k] - b.e_[k];
        return r;
    }
    friend Mat3 operator*(const CycloNum& s, const Mat3& a) {
        Mat3 r;
        for (std::size_t k = 0; k < 9; ++k) r.e_[k] = s * a.e_[k];
        return r;
    }
    friend bool operator==(const Mat3& a, const Mat3& b) { return a.e_ == b.e_; }

    CycloNum trace() const { return e_[0] + e_[4] + e_[8]; }

    CycloNum det() const {
        const Mat3& m = *this;
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
             - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
             + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }

    Mat3 adjugate() const {
        const Mat3& m = *this;
        Mat3 a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                a(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
            }
        return a;
    }

    Mat3 inverse() const {
        const CycloNum d = det();
        if (d.is_zero()) throw std::domain_error("Mat3: inverse of a singular matrix");
        return d.inverse() * adjugate();
    }

    Mat3 pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Mat3 result = identity(), base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    // Second elementary symmetric function of the eigenvalues.
    CycloNum principal_minor_sum() const {
        const Mat3& m = *this;
        return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) + (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0))
             + (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
    }

    // det(zI - M) = c[0] + c[1] z + c[2] z^2 + c[3] z^3.
    std::array<CycloNum, 4> char_poly() const { return {-det(), principal_minor_sum(), -trace(), CycloNum(1)}; }

    bool is_zero() const {
        for (const auto& v : e_)
            if (!v.is_zero()) return false;
        return true;
    }

    // Exact rank via vanishing minors.
    int rank() const {
        if (!det().is_zero()) return 3;
        const Mat3& m = *this;
        for (int r0 = 0; r0 < 3; ++r0)
            for (int r1 = r0 + 1; r1 < 3; ++r1)
                for (int c0 = 0; c0 < 3; ++c0)
                    for (int c1 = c0 + 1; c1 < 3; ++c1)
                        if (!(m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0)).is_zero()) return 2;
        return is_zero() ? 0 : 1;
    }

    Mat3 conj_transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i).conj();
        return r;
    }

    unsigned common_conductor() const {
        unsigned n = 1;
        for (const auto& v : e_) n = std::lcm(n, v.conductor());
        return n;
    }
    Mat3 lifted(unsigned n) const {
        Mat3 r;
        for (std::size_t k = 0; k < 9; ++k) r.e_[k] = e_[k].lifted(n);
        return r;
    }

    // Same-conductor hash (see CycloNum::raw_hash).
    std::size_t raw_hash() const {
        std::size_t h = 0;
        for (const auto& v : e_) h = h * 31u + v.raw_hash();
        return h;
    }

    std::string key() const {
        std::string s;
        for (std::size_t k = 0; k < 9; ++k) {
            if (k) s += ';';
            s += e_[k].key();
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Mat3& m) {
        for (int i = 0; i < 3; ++i) {
            os << "[";
            for (int j = 0; j < 3; ++j) os << (j ? ", " : "") << m(i, j);
            os << "]" << (i < 2 ? "\n" : "");
        }
        return os;
    }

private:
    std::array<CycloNum, 9> e_;
};

struct Mat3RawHash {
    std::size_t operator()(const Mat3& m) const { return m.raw_hash(); }
};

// The non-unit eigenvalue t = det(M) when M - I has rank one and M is
// invertible; empty otherwise.
inline std::optional<CycloNum> is_pseudo_reflection(const Mat3& m) {
    if ((m - Mat3::identity()).rank() != 1) return std::nullopt;
    CycloNum t = m.det();
    if (t.is_zero()) return std::nullopt;
    return t;
}

// Smallest k >= 1 with M^k = I, searching up to bound.
inline std::optional<long> element_order(const Mat3& m, long bound) {
    const Mat3 id = Mat3::identity();
    Mat3 p = m;
    for (long k = 1; k <= bound; ++k) {
        if (p == id) return k;
        p = p * m;
    }
    return std::nullopt;
}

// Eigenvalue exponents: multiset {k_i / order} in [0,1), sorted ascending.
struct Spectrum {
    std::array<Rational, 3> exponents;
    friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

inline Spectrum finite_order_spectrum(const Mat3& m, long order) {
    if (order < 1) throw std::invalid_argument("finite_order_spectrum: order must be positive");
    if (!(m.pow(order) == Mat3::identity()))
        throw std::domain_error("finite_order_spectrum: M^order != I");
    const CycloNum e1 = m.trace(), e2 = m.principal_minor_sum(), e3 = m.det();
    const unsigned n = std::lcm(m.common_conductor(), static_cast<unsigned>(order));
    std::vector<CycloNum> z(static_cast<std::size_t>(order));
    for (long k = 0; k < order; ++k) z[static_cast<std::size_t>(k)] = root_of_unity(order, k).lifted(n);
    const CycloNum t1 = e1.lifted(n), t2 = e2.lifted(n), t3 = e3.lifted(n);
    const auto o = static_cast<std::size_t>(order);
    for (std::size_t a = 0; a < o; ++a)
        for (std::size_t b = a; b < o; ++b) {
            const CycloNum zab = z[(a + b) % o];
            const CycloNum partial = z[a] + z[b];
            for (std::size_t c = b; c < o; ++c) {
                if (!(partial + z[c] == t1)) continue;
                if (!(zab + z[(a + c) % o] + z[(b + c) % o] == t2)) continue;
                if (!(z[(a + b + c) % o] == t3)) continue;
                return Spectrum{{Rational(static_cast<long>(a), order), Rational(static_cast<long>(b), order),
                                 Rational(static_cast<long>(c), order)}};
            }
        }
    throw std::domain_error("finite_order_spectrum: no exponent triple matches the characteristic polynomial");
}

}  // namespace crpvi
