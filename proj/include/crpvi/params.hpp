#pragma once

// Local exponents of rank-three Fuchsian systems and the Painleve VI
// parameters they determine, plus the cubic identities relating the trace
// coordinates (x, y) to Hitchin's form of f^2.

#include "crpvi/reflection_groups.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crpvi {

struct LambdaMu {
    std::array<Rational, 3> lambda;
    std::array<Rational, 3> mu;

    Rational sum_discrepancy() const {
        return (lambda[0] + lambda[1] + lambda[2]) - (mu[0] + mu[1] + mu[2]);
    }
    bool balanced() const { return sum_discrepancy().is_zero(); }

    friend bool operator==(const LambdaMu&, const LambdaMu&) = default;
};

using Perm3 = std::array<int, 3>;

inline const std::array<Perm3, 6>& all_perms3() {
    static const std::array<Perm3, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    return perms;
}

struct Theta {
    std::array<Rational, 4> v;

    Theta abs() const { return {{v[0].abs(), v[1].abs(), v[2].abs(), v[3].abs()}}; }

    // "(a,b,c,d)/n" over the common denominator, "(a,b,c,d)" if integral.
    std::string str() const {
        mpz_class den = 1;
        for (const auto& r : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.raw().get_den_mpz_t());
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < 4; ++i) {
            const mpq_class scaled = r_times(v[i], den);
            os << (i ? "," : "") << scaled.get_num().get_str();
        }
        os << ')';
        if (den != 1) os << '/' << den.get_str();
        return os.str();
    }

    friend bool operator==(const Theta&, const Theta&) = default;
    friend auto operator<=>(const Theta& a, const Theta& b) {
        for (std::size_t i = 0; i < 4; ++i)
            if (auto c = a.v[i] <=> b.v[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const Theta& t) { return os << t.str(); }

private:
    static mpq_class r_times(const Rational& r, const mpz_class& d) { return r.raw() * mpq_class(d); }
};

struct PviParams {
    Rational alpha, beta, gamma, delta;
    friend bool operator==(const PviParams&, const PviParams&) = default;
};

inline LambdaMu lambda_mu_of_triple(const Triple& r, long order_bound = 100000) {
    LambdaMu lm;
    for (std::size_t i = 0; i < 3; ++i) {
        auto t = is_pseudo_reflection(r[i]);
        if (!t) throw std::invalid_argument("lambda_mu_of_triple: component is not a pseudo-reflection");
        lm.lambda[i] = log_root_of_unity(*t);
    }
    const Mat3 prod = r[0] * r[1] * r[2];
    auto ord = element_order(prod, order_bound);
    if (!ord) throw std::domain_error("lambda_mu_of_triple: r1 r2 r3 has no finite order within the bound");
    lm.mu = finite_order_spectrum(prod, *ord).exponents;
    return lm;
}

inline std::array<Rational, 3> mu_from_degrees(const std::array<int, 3>& degrees) {
    if (degrees[2] < 1) throw std::invalid_argument("mu_from_degrees: degrees must be positive");
    std::array<Rational, 3> mu;
    for (std::size_t i = 0; i < 3; ++i) mu[i] = Rational(degrees[i] - 1, degrees[2]);
    return mu;
}

// theta_i = lambda_i - mu_{perm 0}, theta_4 = mu_{perm 1} - mu_{perm 2}.
inline Theta theta_map(const LambdaMu& lm, const Perm3& perm) {
    const Rational& m1 = lm.mu[static_cast<std::size_t>(perm[0])];
    const Rational& m2 = lm.mu[static_cast<std::size_t>(perm[1])];
    const Rational& m3 = lm.mu[static_cast<std::size_t>(perm[2])];
    return {{lm.lambda[0] - m1, lm.lambda[1] - m1, lm.lambda[2] - m1, m2 - m3}};
}

// Integer shifts k in {-1,0,1}^3 of the lambda representatives making
// sum(lambda + k) = sum(mu) exactly.
inline std::vector<LambdaMu> balanced_lifts(const LambdaMu& lm) {
    const Rational d = lm.sum_discrepancy();
    if (!d.is_integer()) throw std::domain_error("balanced_lifts: sum(lambda) - sum(mu) is not an integer");
    std::vector<LambdaMu> out;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c) {
                if (Rational(a + b + c) + d != Rational(0)) continue;
                LambdaMu s = lm;
                s.lambda[0] += Rational(a);
                s.lambda[1] += Rational(b);
                s.lambda[2] += Rational(c);
                out.push_back(s);
            }
    return out;
}

// |theta| over all balanced lifts and all six mu-permutations, sorted and
// without repeats.
inline std::vector<Theta> theta_candidates(const LambdaMu& lm) {
    std::vector<Theta> out;
    for (const auto& lift : balanced_lifts(lm))
        for (const auto& perm : all_perms3()) out.push_back(theta_map(lift, perm).abs());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline Theta canonical_theta(const LambdaMu& lm) {
    const auto c = theta_candidates(lm);
    if (c.empty()) throw std::domain_error("canonical_theta: no balanced lift of lambda");
    return c.front();
}

inline PviParams pvi_abcd(const Theta& th) {
    const Rational half(1, 2);
    const Rational t4m1 = th.v[3] - Rational(1);
    return {t4m1 * t4m1 * half, -(th.v[0] * th.v[0]) * half, th.v[1] * th.v[1] * half,
            (Rational(1) - th.v[2] * th.v[2]) * half};
}

// ---------------------------------------------------------------------------
// Table of theta tuples from standard generating triples.

inline std::optional<Theta> tabulated_theta(const GroupSpec& spec) {
    if (spec.is_imprimitive()) {
        const long m = spec.m();
        if (spec.p() == m) {
            const Rational d(1, 2 * m);
            return Theta{{Rational(m - 2) * d, Rational(m - 2) * d, Rational(m - 2) * d, Rational(m) * d}};
        }
        if (spec.p() == 1) {
            const Rational d(1, 6 * m);
            return Theta{{Rational(m - 2) * d, Rational(m - 2) * d, Rational(2 * m - 4) * d, Rational(4 * m) * d}};
        }
        return std::nullopt;
    }
    auto frac = [](long a, long b, long c, long d, long n) {
        return Theta{{Rational(a, n), Rational(b, n), Rational(c, n), Rational(d, n)}};
    };
    switch (spec.id()) {
        case ExceptionalId::icosahedral: return frac(0, 0, 0, 4, 5);
        case ExceptionalId::G336: return frac(2, 2, 2, 4, 7);
        case ExceptionalId::G648: return frac(0, 0, 0, 1, 2);
        case ExceptionalId::G1296: return frac(4, 7, 7, 12, 18);
        case ExceptionalId::G2160: return frac(5, 5, 5, 9, 15);
    }
    return std::nullopt;
}

struct ThetaTableRow {
    GroupSpec spec;
    std::array<int, 3> degrees;
    LambdaMu lm;
    Theta canonical;
    std::vector<Theta> candidates;
    std::optional<Theta> tabulated;
    bool matches = false;  // tabulated tuple is one of the candidates
    std::string message;
};

inline ThetaTableRow theta_table_row(const GroupSpec& spec) {
    ThetaTableRow row{spec, spec.degrees(), lambda_mu_of_triple(standard_generators(spec)), {}, {}, tabulated_theta(spec), false, {}};
    row.candidates = theta_candidates(row.lm);
    row.canonical = row.candidates.front();
    if (!row.tabulated) {
        row.message = "no tabulated row";
    } else {
        row.matches = std::find(row.candidates.begin(), row.candidates.end(), *row.tabulated) != row.candidates.end();
        if (!row.matches) {
            std::string got;
            for (const auto& c : row.candidates) got += (got.empty() ? "" : " ") + c.str();
            row.message = "tabulated " + row.tabulated->str() + " not among computed " + got;
        }
    }
    return row;
}

// The seven rows: both imprimitive families at each m, then the exceptionals.
inline std::vector<GroupSpec> theta_table_specs(const std::vector<int>& ms = {3, 4, 5, 6}) {
    std::vector<GroupSpec> out;
    for (int m : ms) out.push_back(GroupSpec::imprimitive(m, m));
    for (int m : ms) out.push_back(GroupSpec::imprimitive(m, 1));
    for (auto id : {ExceptionalId::icosahedral, ExceptionalId::G336, ExceptionalId::G648, ExceptionalId::G1296,
                    ExceptionalId::G2160})
        out.push_back(GroupSpec::exceptional(id));
    return out;
}

inline std::vector<ThetaTableRow> theta_table(const std::vector<GroupSpec>& specs = theta_table_specs()) {
    std::vector<ThetaTableRow> rows;
    for (const auto& s : specs) rows.push_back(theta_table_row(s));
    return rows;
}

// ---------------------------------------------------------------------------
// Polynomials in (x, y) and the cubic identities.

class Poly2 {
public:
    using Monomial = std::pair<int, int>;  // (deg x, deg y)

    Poly2() = default;
    Poly2(const Rational& c) { add(0, 0, c); }  // NOLINT(google-explicit-constructor)
    static Poly2 x() { return monomial(1, 0); }
    static Poly2 y() { return monomial(0, 1); }
    static Poly2 monomial(int i, int j, const Rational& c = Rational(1)) {
        Poly2 p;
        p.add(i, j, c);
        return p;
    }

    Rational coeff(int i, int j) const {
        auto it = c_.find({i, j});
        return it == c_.end() ? Rational(0) : it->second;
    }
    const std::map<Monomial, Rational>& terms() const { return c_; }
    int degree() const {
        int d = -1;
        for (const auto& [m, c] : c_) d = std::max(d, m.first + m.second);
        return d;
    }

    Rational operator()(const Rational& xv, const Rational& yv) const {
        Rational s(0);
        for (const auto& [m, c] : c_) s += c * ipow(xv, m.first) * ipow(yv, m.second);
        return s;
    }

    // p(x + x0, y + y0)
    Poly2 shifted(const Rational& x0, const Rational& y0) const {
        Poly2 out;
        const Poly2 xs = x() + Poly2(x0), ys = y() + Poly2(y0);
        for (const auto& [m, c] : c_) out += Poly2(c) * xs.pow(m.first) * ys.pow(m.second);
        return out;
    }

    Poly2 pow(int e) const {
        Poly2 r(Rational(1));
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    Poly2& operator+=(const Poly2& o) {
        for (const auto& [m, c] : o.c_) add(m.first, m.second, c);
        return *this;
    }
    Poly2& operator-=(const Poly2& o) {
        for (const auto& [m, c] : o.c_) add(m.first, m.second, -c);
        return *this;
    }
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r;
        for (const auto& [ma, ca] : a.c_)
            for (const auto& [mb, cb] : b.c_) r.add(ma.first + mb.first, ma.second + mb.second, ca * cb);
        return r;
    }
    friend bool operator==(const Poly2&, const Poly2&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Poly2& p) {
        if (p.c_.empty()) return os << '0';
        bool first = true;
        for (auto it = p.c_.rbegin(); it != p.c_.rend(); ++it) {
            os << (first ? "" : " + ") << it->second;
            if (it->first.first) os << "*x^" << it->first.first;
            if (it->first.second) os << "*y^" << it->first.second;
            first = false;
        }
        return os;
    }

private:
    void add(int i, int j, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = c_.try_emplace({i, j}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    static Rational ipow(const Rational& b, int e) {
        Rational r(1);
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }

    std::map<Monomial, Rational> c_;
};

using CubicForm = Poly2;

// Constants with w = c - x - y and p + q = a x + b y + k on the level set of
// rank-one residues with diagonal lambda and B4 spectrum -mu.
struct CubicCoeffs {
    Rational a, b, k, c;
    friend bool operator==(const CubicCoeffs&, const CubicCoeffs&) = default;
};

// Same constants in terms of the elementary symmetric functions e1, e2, e3
// of mu, so that configurations with irrational spectrum can be checked
// exactly. Requires e1 == sum(lambda).
inline CubicCoeffs cubic_coeffs_symmetric(const std::array<Rational, 3>& l, const Rational& e1, const Rational& e2,
                                          const Rational& e3) {
    if (l[0] + l[1] + l[2] != e1) throw std::domain_error("cubic_coeffs: requires sum(lambda) == sum(mu) exactly");
    const Rational sum_mu_sq = e1 * e1 - Rational(2) * e2;
    const Rational c = (sum_mu_sq - l[0] * l[0] - l[1] * l[1] - l[2] * l[2]) * Rational(1, 2);
    return {l[1] - l[2], l[0] - l[2], e3 - l[0] * l[1] * l[2] + l[2] * c, c};
}

inline CubicCoeffs cubic_coeffs(const LambdaMu& lm) {
    const auto& m = lm.mu;
    return cubic_coeffs_symmetric(lm.lambda, m[0] + m[1] + m[2], m[0] * m[1] + m[0] * m[2] + m[1] * m[2], m[0] * m[1] * m[2]);
}

// (a x + b y + k)^2 + 4 x y (x + y - c)
inline CubicForm f_squared_form(const LambdaMu& lm) {
    const auto cc = cubic_coeffs(lm);
    const Poly2 x = Poly2::x(), y = Poly2::y();
    const Poly2 lin = Poly2(cc.a) * x + Poly2(cc.b) * y + Poly2(cc.k);
    return lin * lin + Poly2(Rational(4)) * x * y * (x + y - Poly2(cc.c));
}

inline Rational f_squared(const Rational& x, const Rational& y, const LambdaMu& lm) {
    const auto cc = cubic_coeffs(lm);
    const Rational lin = cc.a * x + cc.b * y + cc.k;
    return lin * lin + Rational(4) * x * y * (x + y - cc.c);
}

// -2 det [[e1, e - X - Y, X], [e - X - Y, e2, Y], [X, Y, e3]]
// with e_i = theta_i^2 / 2 and 2e = e4 - e1 - e2 - e3.
inline CubicForm f_hitchin_form(const Theta& th) {
    std::array<Rational, 4> e;
    for (std::size_t i = 0; i < 4; ++i) e[i] = th.v[i] * th.v[i] * Rational(1, 2);
    const Rational eps = (e[3] - e[0] - e[1] - e[2]) * Rational(1, 2);
    const Poly2 X = Poly2::x(), Y = Poly2::y();
    const Poly2 a11(e[0]), a22(e[1]), a33(e[2]);
    const Poly2 a12 = Poly2(eps) - X - Y;
    const Poly2& a13 = X;
    const Poly2& a23 = Y;
    const Poly2 det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) + a13 * (a12 * a23 - a22 * a13);
    return Poly2(Rational(-2)) * det;
}

inline Rational f_hitchin_squared(const Rational& x, const Rational& y, const Theta& th) { return f_hitchin_form(th)(x, y); }

struct NormalCubic {
    Rational A, B, C, D;     // 4x^2y + 4xy^2 + A xy + B x + C y + D
    Rational x0, y0;         // normal(X, Y) = input(X + x0, Y + y0)
    CubicForm form;
};

inline NormalCubic normalize_cubic(const CubicForm& p) {
    const bool lead_ok = p.coeff(2, 1) == Rational(4) && p.coeff(1, 2) == Rational(4) && p.coeff(3, 0).is_zero() &&
                         p.coeff(0, 3).is_zero() && p.degree() == 3;
    if (!lead_ok) throw std::invalid_argument("normalize_cubic: leading part must be exactly 4x^2y + 4xy^2");
    NormalCubic n;
    n.y0 = -p.coeff(2, 0) * Rational(1, 4);
    n.x0 = -p.coeff(0, 2) * Rational(1, 4);
    n.form = p.shifted(n.x0, n.y0);
    n.A = n.form.coeff(1, 1);
    n.B = n.form.coeff(1, 0);
    n.C = n.form.coeff(0, 1);
    n.D = n.form.coeff(0, 0);
    return n;
}

}  // namespace crpvi
