#pragma once

// Floating-point layer: rank-one residue sampling with prescribed local
// exponents, the rank-three Schlesinger flow with poles at (0, 1, t), the
// reduced (x, y) flow, and the zeros eta_ij of off-diagonal entries.

#include "crpvi/params.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace crpvi {

using cplx = std::complex<double>;
using CMat3 = Eigen::Matrix3cd;

struct ResidueConfig {
    std::array<CMat3, 4> B;  // residues at 0, 1, t, infinity
    LambdaMu lm;
    cplx t{0.5, 0.0};
    // Sampled trace data, valid before any gauge change.
    cplx w, x, y, p, q;
};

namespace detail {

inline std::array<double, 3> to_double(const std::array<Rational, 3>& r) {
    return {r[0].to_double(), r[1].to_double(), r[2].to_double()};
}

// (e1, e2, e3) of the eigenvalues of m.
inline std::array<cplx, 3> char_coeffs(const CMat3& m) {
    const cplx e1 = m.trace();
    const cplx e2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) -
                    m(1, 2) * m(2, 1);
    return {e1, e2, m.determinant()};
}

inline std::array<cplx, 3> elementary(const std::array<cplx, 3>& v) {
    return {v[0] + v[1] + v[2], v[0] * v[1] + v[0] * v[2] + v[1] * v[2], v[0] * v[1] * v[2]};
}

inline double max_abs_diff(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
    double d = 0;
    for (std::size_t i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline double rank_one_defect(const CMat3& m) {
    double d = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = k + 1; l < 3; ++l) d = std::max(d, std::abs(m(i, k) * m(j, l) - m(i, l) * m(j, k)));
    return d;
}

}  // namespace detail

struct InvariantReport {
    double rank_defect = 0;     // largest 2x2 minor of B1, B2, B3
    double trace_error = 0;     // |Tr B_i - lambda_i|
    double sum_error = 0;       // |B1 + B2 + B3 + B4|
    double spectrum_error = 0;  // B4 characteristic polynomial against -mu
    bool ok(double tol_rank = 1e-10, double tol_sum = 1e-12, double tol_spec = 1e-8) const {
        return rank_defect < tol_rank && trace_error < tol_rank && sum_error < tol_sum && spectrum_error < tol_spec;
    }
};

inline InvariantReport check_invariants(const ResidueConfig& cfg) {
    InvariantReport r;
    const auto lam = detail::to_double(cfg.lm.lambda);
    const auto mu = detail::to_double(cfg.lm.mu);
    for (std::size_t i = 0; i < 3; ++i) {
        r.rank_defect = std::max(r.rank_defect, detail::rank_one_defect(cfg.B[i]));
        r.trace_error = std::max(r.trace_error, std::abs(cfg.B[i].trace() - lam[i]));
    }
    r.sum_error = (cfg.B[0] + cfg.B[1] + cfg.B[2] + cfg.B[3]).cwiseAbs().maxCoeff();
    r.spectrum_error = detail::max_abs_diff(detail::char_coeffs(cfg.B[3]), detail::elementary({-mu[0], -mu[1], -mu[2]}));
    return r;
}

class SamplingFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Builds M with diagonal lambda and eigenvalues mu, B_i = e_i (row i of M),
// B4 = -M. Four off-diagonal entries are random; the remaining pair solves
// A b12^2 - (a x + b y + k) b12 + w B = 0 with w = c - x - y.
inline ResidueConfig sample_residues(const LambdaMu& lm, std::uint64_t seed, cplx t = {0.5, 0.0}) {
    const CubicCoeffs cc = cubic_coeffs(lm);  // throws on unbalanced input
    const double a = cc.a.to_double(), b = cc.b.to_double(), k = cc.k.to_double(), c = cc.c.to_double();
    const auto lam = detail::to_double(lm.lambda);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto draw = [&] { return cplx(normal(rng), normal(rng)); };
    constexpr double small = 1e-3;

    for (int attempt = 0; attempt < 50; ++attempt) {
        const cplx b13 = draw(), b31 = draw(), b23 = draw(), b32 = draw();
        const cplx x = b13 * b31, y = b23 * b32, w = c - x - y;
        const cplx Pi = a * x + b * y + k;
        const cplx A = b23 * b31, Bq = b13 * b32;
        if (std::abs(A) < small) continue;
        const cplx disc = std::sqrt(Pi * Pi - 4.0 * A * w * Bq);
        const cplx r1 = (Pi + disc) / (2.0 * A), r2 = (Pi - disc) / (2.0 * A);
        const cplx b12 = std::abs(r1) >= std::abs(r2) ? r1 : r2;
        if (std::abs(b12) < small || std::abs(w) < small * small) continue;
        const cplx b21 = w / b12;

        CMat3 M;
        M << lam[0], b12, b13, b21, lam[1], b23, b31, b32, lam[2];
        ResidueConfig cfg;
        cfg.lm = lm;
        cfg.t = t;
        for (int i = 0; i < 3; ++i) {
            cfg.B[static_cast<std::size_t>(i)] = CMat3::Zero();
            cfg.B[static_cast<std::size_t>(i)].row(i) = M.row(i);
        }
        cfg.B[3] = -M;
        cfg.w = w;
        cfg.x = x;
        cfg.y = y;
        cfg.p = b12 * b23 * b31;
        cfg.q = b32 * b21 * b13;
        if (!check_invariants(cfg).ok()) continue;
        return cfg;
    }
    throw SamplingFailed("sample_residues: 50 consecutive degenerate samples");
}

// Conjugates every residue so that B4 = diag(-mu_1, -mu_2, -mu_3). Needs
// distinct mu.
inline ResidueConfig diagonalize_b4(const ResidueConfig& cfg) {
    const auto mu = detail::to_double(cfg.lm.mu);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (std::abs(mu[i] - mu[j]) < 1e-9) throw std::domain_error("diagonalize_b4: mu must be pairwise distinct");
    Eigen::ComplexEigenSolver<CMat3> es(cfg.B[3]);
    if (es.info() != Eigen::Success) throw std::runtime_error("diagonalize_b4: eigen decomposition failed");
    CMat3 V;
    for (int i = 0; i < 3; ++i) {
        int best = 0;
        for (int j = 1; j < 3; ++j)
            if (std::abs(es.eigenvalues()(j) + mu[static_cast<std::size_t>(i)]) <
                std::abs(es.eigenvalues()(best) + mu[static_cast<std::size_t>(i)]))
                best = j;
        V.col(i) = es.eigenvectors().col(best);
    }
    Eigen::FullPivLU<CMat3> lu(V);
    if (!lu.isInvertible()) throw std::runtime_error("diagonalize_b4: eigenvector matrix is singular");
    const CMat3 Vi = lu.inverse();
    ResidueConfig out = cfg;
    for (int i = 0; i < 3; ++i) out.B[static_cast<std::size_t>(i)] = Vi * cfg.B[static_cast<std::size_t>(i)] * V;
    out.B[3] = CMat3::Zero();
    for (int i = 0; i < 3; ++i) out.B[3](i, i) = -mu[static_cast<std::size_t>(i)];
    // Absorb the rounding of the conjugation into B3 so the sum is exact.
    out.B[2] = -out.B[3] - out.B[0] - out.B[1];
    return out;
}

// ---------------------------------------------------------------------------
// Paths in the t-plane.

struct PathSegment {
    enum class Kind { line, arc } kind = Kind::line;
    cplx from, to;           // line
    cplx center;             // arc
    double radius = 0, phi0 = 0, phi1 = 0;

    static PathSegment line(cplx a, cplx b) { return {Kind::line, a, b, {}, 0, 0, 0}; }
    // Counter-clockwise when phi1 > phi0.
    static PathSegment arc(cplx c, double r, double phi0, double phi1) {
        return {Kind::arc, c + std::polar(r, phi0), c + std::polar(r, phi1), c, r, phi0, phi1};
    }

    cplx at(double s) const {
        if (kind == Kind::line) return from + s * (to - from);
        return center + std::polar(radius, phi0 + s * (phi1 - phi0));
    }
    cplx velocity(double s) const {
        if (kind == Kind::line) return to - from;
        return cplx(0, 1) * (phi1 - phi0) * std::polar(radius, phi0 + s * (phi1 - phi0));
    }
    double length() const { return kind == Kind::line ? std::abs(to - from) : radius * std::abs(phi1 - phi0); }

    double distance_to(cplx z) const {
        if (kind == Kind::line) {
            const cplx d = to - from;
            const double n2 = std::norm(d);
            const double s = n2 == 0 ? 0.0 : std::clamp(((z - from) * std::conj(d)).real() / n2, 0.0, 1.0);
            return std::abs(z - at(s));
        }
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 2000; ++i) best = std::min(best, std::abs(z - at(i / 2000.0)));
        return best;
    }
};

using Path = std::vector<PathSegment>;

inline Path straight_path(cplx a, cplx b) { return {PathSegment::line(a, b)}; }

// ---------------------------------------------------------------------------
// Schlesinger flow.

struct TrajectoryPoint {
    cplx t;
    CMat3 B1, B2, B3;
    cplx x, y, f;  // Tr(B1 B3), Tr(B2 B3), Tr(B1 [B2, B3])
};

struct Trajectory {
    CMat3 B4;
    LambdaMu lm;
    std::vector<TrajectoryPoint> points;
    double tol = 0;
    std::size_t accepted_steps = 0, rejected_steps = 0;
};

class StepUnderflow : public std::runtime_error {
public:
    StepUnderflow(cplx where, double h)
        : std::runtime_error(describe(where, h)), where_(where) {}
    cplx where() const { return where_; }

private:
    static std::string describe(cplx where, double h) {
        std::ostringstream os;
        os << "integrate_schlesinger: step size " << h << " underflow near t = " << where.real() << (where.imag() < 0 ? "" : "+")
           << where.imag() << "i";
        return os.str();
    }
    cplx where_;
};

namespace detail {

// Generic Dormand-Prince 5(4) on a fixed-size complex state over s in [s0, s1].
template <class State, class Rhs, class Norm>
void dopri_advance(State& y, double s0, double s1, double& h, double tol, Rhs&& rhs, Norm&& err_norm,
                   std::size_t& accepted, std::size_t& rejected, const std::function<cplx(double)>& where) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    double s = s0;
    const double span = s1 - s0;
    if (h <= 0 || h > span) h = span;
    while (s < s1) {
        const bool last = s + h >= s1;
        const double step = last ? s1 - s : h;
        const State k1 = rhs(s, y);
        const State k2 = rhs(s + c2 * step, y + step * (a21 * k1));
        const State k3 = rhs(s + c3 * step, y + step * (a31 * k1 + a32 * k2));
        const State k4 = rhs(s + c4 * step, y + step * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = rhs(s + c5 * step, y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 = rhs(s + step, y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const State y5 = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const State k7 = rhs(s + step, y5);
        const State err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = err_norm(err, y, y5) / tol;
        if (en <= 1.0) {
            y = y5;
            s = last ? s1 : s + step;
            ++accepted;
            if (!last || step >= h) h = step * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-16), -0.2)));
        } else {
            ++rejected;
            h = step * std::max(0.1, 0.9 * std::pow(en, -0.2));
        }
        if (h < 1e-13 * std::max(1.0, std::abs(span))) throw StepUnderflow(where(s), h);
    }
}

using SchlesingerState = Eigen::Matrix<cplx, 18, 1>;

inline CMat3 unpack(const SchlesingerState& s, int which) {
    CMat3 m;
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = s(9 * which + i);
    return m;
}

inline void pack(SchlesingerState& s, int which, const CMat3& m) {
    for (int i = 0; i < 9; ++i) s(9 * which + i) = m(i / 3, i % 3);
}

inline TrajectoryPoint make_point(cplx t, const CMat3& B1, const CMat3& B2, const CMat3& B4) {
    TrajectoryPoint p;
    p.t = t;
    p.B1 = B1;
    p.B2 = B2;
    p.B3 = -B4 - B1 - B2;
    p.x = (B1 * p.B3).trace();
    p.y = (B2 * p.B3).trace();
    p.f = (B1 * (B2 * p.B3 - p.B3 * B2)).trace();
    return p;
}

}  // namespace detail

inline void check_path(const Path& path, double margin = 1e-3) {
    if (path.empty()) throw std::invalid_argument("path is empty");
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i > 0 && std::abs(path[i].at(0.0) - path[i - 1].at(1.0)) > 1e-12)
            throw std::invalid_argument("path segments are not contiguous");
        if (path[i].distance_to(0.0) < margin || path[i].distance_to(1.0) < margin)
            throw std::invalid_argument("path passes within " + std::to_string(margin) + " of t = 0 or t = 1");
    }
}

// Integrates dB1/dt = [B3,B1]/t, dB2/dt = [B3,B2]/(t-1), B3 = -B4-B1-B2,
// along the path, recording samples every `sample_step` of arc length
// (rounded so each segment is split into equal pieces). The configuration's
// t must equal the path start.
inline Trajectory integrate_schlesinger(const ResidueConfig& cfg, const Path& path, double tol = 1e-10,
                                        double sample_step = 1e-3) {
    check_path(path);
    if (std::abs(path.front().at(0.0) - cfg.t) > 1e-12)
        throw std::invalid_argument("integrate_schlesinger: path must start at the configuration's t");
    if (!(tol > 0) || !(sample_step > 0)) throw std::invalid_argument("integrate_schlesinger: tol and sample_step must be positive");

    Trajectory tr;
    tr.B4 = cfg.B[3];
    tr.lm = cfg.lm;
    tr.tol = tol;
    detail::SchlesingerState y;
    detail::pack(y, 0, cfg.B[0]);
    detail::pack(y, 1, cfg.B[1]);
    tr.points.push_back(detail::make_point(cfg.t, cfg.B[0], cfg.B[1], tr.B4));

    const CMat3 B4 = tr.B4;
    auto norm = [](const detail::SchlesingerState& e, const detail::SchlesingerState& y0, const detail::SchlesingerState& y1) {
        double m = 0;
        for (int i = 0; i < 18; ++i) m = std::max(m, std::abs(e(i)) / (1.0 + std::max(std::abs(y0(i)), std::abs(y1(i)))));
        return m;
    };
    double h = 0;
    for (const auto& seg : path) {
        auto rhs = [&](double s, const detail::SchlesingerState& st) {
            const cplx t = seg.at(s), dt = seg.velocity(s);
            const CMat3 B1 = detail::unpack(st, 0), B2 = detail::unpack(st, 1);
            const CMat3 B3 = -B4 - B1 - B2;
            detail::SchlesingerState d;
            detail::pack(d, 0, (B3 * B1 - B1 * B3) * (dt / t));
            detail::pack(d, 1, (B3 * B2 - B2 * B3) * (dt / (t - 1.0)));
            return d;
        };
        const int pieces = std::max(1, static_cast<int>(std::lround(seg.length() / sample_step)));
        std::function<cplx(double)> where = [&seg](double s) { return seg.at(s); };
        h = 0;
        for (int piece = 0; piece < pieces; ++piece) {
            const double s0 = static_cast<double>(piece) / pieces, s1 = static_cast<double>(piece + 1) / pieces;
            double hs = h;
            detail::dopri_advance(y, s0, s1, hs, tol, rhs, norm, tr.accepted_steps, tr.rejected_steps, where);
            h = hs;
            tr.points.push_back(detail::make_point(seg.at(s1), detail::unpack(y, 0), detail::unpack(y, 1), B4));
        }
    }
    return tr;
}

// ---------------------------------------------------------------------------
// Conserved quantities along a trajectory.

struct TrajectoryChecks {
    double spectral_drift = 0;  // characteristic polynomials of B1, B2, B3
    double b4_drift = 0;        // B4 recovered as -(B1 + B2 + B3) against the fixed B4
    double tr_b4_powers_drift = 0;
    double wxy_drift = 0;       // w + x + y with w = Tr(B1 B2)
    double f2_mismatch = 0;     // |f^2 - f_squared(x, y)|, relative
};

inline TrajectoryChecks check_trajectory(const Trajectory& tr) {
    TrajectoryChecks c;
    if (tr.points.empty()) return c;
    const auto& p0 = tr.points.front();
    const std::array<std::array<cplx, 3>, 3> ref{detail::char_coeffs(p0.B1), detail::char_coeffs(p0.B2),
                                                 detail::char_coeffs(p0.B3)};
    const CubicCoeffs cc = cubic_coeffs(tr.lm);
    const double a = cc.a.to_double(), b = cc.b.to_double(), k = cc.k.to_double(), cst = cc.c.to_double();
    const CMat3 B4sq = tr.B4 * tr.B4;
    const cplx t2 = B4sq.trace(), t3 = (B4sq * tr.B4).trace();
    const cplx wxy0 = (p0.B1 * p0.B2).trace() + p0.x + p0.y;
    for (const auto& p : tr.points) {
        c.spectral_drift = std::max({c.spectral_drift, detail::max_abs_diff(detail::char_coeffs(p.B1), ref[0]),
                                     detail::max_abs_diff(detail::char_coeffs(p.B2), ref[1]),
                                     detail::max_abs_diff(detail::char_coeffs(p.B3), ref[2])});
        const CMat3 B4 = -p.B1 - p.B2 - p.B3;
        c.b4_drift = std::max(c.b4_drift, (B4 - tr.B4).cwiseAbs().maxCoeff());
        const CMat3 sq = B4 * B4;
        c.tr_b4_powers_drift = std::max({c.tr_b4_powers_drift, std::abs(sq.trace() - t2), std::abs((sq * B4).trace() - t3)});
        c.wxy_drift = std::max(c.wxy_drift, std::abs((p.B1 * p.B2).trace() + p.x + p.y - wxy0));
        const cplx lin = a * p.x + b * p.y + k;
        const cplx f2 = lin * lin + 4.0 * p.x * p.y * (p.x + p.y - cst);
        c.f2_mismatch = std::max(c.f2_mismatch, std::abs(p.f * p.f - f2) / (1.0 + std::abs(f2)));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Reduced flow dx/dt = f/(t-1), dy/dt = -f/t with f = +-sqrt(f_squared).

struct ReducedFlowReport {
    double max_deviation = 0;
    std::vector<cplx> flagged;  // times where |f| fell below the sign-tracking threshold
};

inline ReducedFlowReport reduced_flow_compare(const Trajectory& tr, double tol = 1e-12, double flag_threshold = 1e-10) {
    ReducedFlowReport rep;
    if (tr.points.size() < 2) return rep;
    const CubicCoeffs cc = cubic_coeffs(tr.lm);
    const double a = cc.a.to_double(), b = cc.b.to_double(), k = cc.k.to_double(), c = cc.c.to_double();
    using State = Eigen::Matrix<cplx, 2, 1>;
    State st(tr.points.front().x, tr.points.front().y);
    cplx f_prev = tr.points.front().f;
    auto f_of = [&](const State& s) {
        const cplx lin = a * s(0) + b * s(1) + k;
        const cplx r = std::sqrt(lin * lin + 4.0 * s(0) * s(1) * (s(0) + s(1) - c));
        return std::abs(r - f_prev) <= std::abs(-r - f_prev) ? r : -r;
    };
    auto norm = [](const State& e, const State& y0, const State& y1) {
        return std::max(std::abs(e(0)) / (1.0 + std::abs(y1(0)) + std::abs(y0(0))),
                        std::abs(e(1)) / (1.0 + std::abs(y1(1)) + std::abs(y0(1))));
    };
    std::size_t acc = 0, rej = 0;
    double h = 0;
    for (std::size_t i = 1; i < tr.points.size(); ++i) {
        const cplx ta = tr.points[i - 1].t, tb = tr.points[i].t;
        auto rhs = [&](double s, const State& y) {
            const cplx t = ta + s * (tb - ta);
            const cplx f = f_of(y);
            State d;
            d(0) = f / (t - 1.0) * (tb - ta);
            d(1) = -f / t * (tb - ta);
            return d;
        };
        std::function<cplx(double)> where = [&](double s) { return ta + s * (tb - ta); };
        detail::dopri_advance(st, 0.0, 1.0, h, tol, rhs, norm, acc, rej, where);
        f_prev = f_of(st);
        if (std::abs(f_prev) < flag_threshold) rep.flagged.push_back(tb);
        const auto& p = tr.points[i];
        rep.max_deviation = std::max({rep.max_deviation, std::abs(st(0) - p.x), std::abs(st(1) - p.y)});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// eta_ij: zero of the (i,j) entry of z(z-1)(z-t)B(z), linear in z when B4 is
// diagonal.

inline constexpr std::array<std::array<int, 2>, 6> off_diagonal_slots{{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};

inline std::optional<cplx> eta(const TrajectoryPoint& p, int i, int j, double min_coeff = 1e-8) {
    const cplx L = -(1.0 + p.t) * p.B1(i, j) - p.t * p.B2(i, j) - p.B3(i, j);
    const double scale = 1.0 + p.B1.cwiseAbs().maxCoeff() + p.B2.cwiseAbs().maxCoeff();
    if (std::abs(L) < min_coeff * scale) return std::nullopt;
    return -p.t * p.B1(i, j) / L;
}

inline cplx pvi_rhs(cplx eta, cplx d1, cplx t, const PviParams& prm) {
    const double al = prm.alpha.to_double(), be = prm.beta.to_double(), ga = prm.gamma.to_double(), de = prm.delta.to_double();
    const cplx em1 = eta - 1.0, emt = eta - t;
    return 0.5 * (1.0 / eta + 1.0 / em1 + 1.0 / emt) * d1 * d1 - (1.0 / t + 1.0 / (t - 1.0) + 1.0 / emt) * d1 +
           eta * em1 * emt / (t * t * (t - 1.0) * (t - 1.0)) *
               (al + be * t / (eta * eta) + ga * (t - 1.0) / (em1 * em1) + de * t * (t - 1.0) / (emt * emt));
}

struct EtaSlotReport {
    int i = 0, j = 0;
    bool skipped = false;
    std::string diagnostic;
    std::array<double, 6> residual{};  // indexed as all_perms3()
    int best_perm = -1;

    double best() const { return best_perm < 0 ? std::numeric_limits<double>::infinity() : residual[static_cast<std::size_t>(best_perm)]; }
    std::size_t count_below(double thr) const {
        return static_cast<std::size_t>(std::count_if(residual.begin(), residual.end(), [thr](double r) { return r < thr; }));
    }
};

// Max over interior grid points of |eta'' - RHS| / (1 + |eta''| + |RHS|) for each slot and each of
// the six mu-permutations, with five-point central differences. Needs a
// trajectory sampled on a uniform grid.
inline std::array<EtaSlotReport, 6> eta_pvi_residual(const Trajectory& tr, const LambdaMu& lm) {
    const auto& pts = tr.points;
    if (pts.size() < 5) throw std::invalid_argument("eta_pvi_residual: need at least five samples");
    const cplx h = pts[1].t - pts[0].t;
    for (std::size_t k = 1; k < pts.size(); ++k)
        if (std::abs((pts[k].t - pts[k - 1].t) - h) > 1e-9 * std::max(1.0, std::abs(h)) + 1e-13)
            throw std::invalid_argument("eta_pvi_residual: samples are not on a uniform grid");
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && std::abs(tr.B4(i, j)) > 1e-9) throw std::invalid_argument("eta_pvi_residual: B4 must be diagonal");

    std::array<PviParams, 6> prm;
    for (std::size_t k = 0; k < 6; ++k) prm[k] = pvi_abcd(theta_map(lm, all_perms3()[k]));

    std::array<EtaSlotReport, 6> out;
    for (std::size_t s = 0; s < 6; ++s) {
        auto& rep = out[s];
        rep.i = off_diagonal_slots[s][0];
        rep.j = off_diagonal_slots[s][1];
        std::vector<cplx> e(pts.size());
        for (std::size_t k = 0; k < pts.size(); ++k) {
            auto v = eta(pts[k], rep.i, rep.j);
            if (!v) {
                rep.skipped = true;
                std::ostringstream os;
                os << "linear coefficient vanishes near t = " << pts[k].t.real() << "+" << pts[k].t.imag() << "i";
                rep.diagnostic = os.str();
                break;
            }
            e[k] = *v;
        }
        if (rep.skipped) continue;
        double spread = 0;
        for (const auto& v : e) spread = std::max(spread, std::abs(v - e.front()));
        if (spread < 1e-9) {
            rep.skipped = true;
            rep.diagnostic = "eta is constant along the path";
            continue;
        }
        rep.residual.fill(0.0);
        for (std::size_t k = 2; k + 2 < e.size(); ++k) {
            const cplx d1 = (-e[k + 2] + 8.0 * e[k + 1] - 8.0 * e[k - 1] + e[k - 2]) / (12.0 * h);
            const cplx d2 = (-e[k + 2] + 16.0 * e[k + 1] - 30.0 * e[k] + 16.0 * e[k - 1] - e[k - 2]) / (12.0 * h * h);
            for (std::size_t q = 0; q < 6; ++q) {
                const cplx rhs = pvi_rhs(e[k], d1, pts[k].t, prm[q]);
                rep.residual[q] = std::max(rep.residual[q], std::abs(d2 - rhs) / (1.0 + std::abs(d2) + std::abs(rhs)));
            }
        }
        rep.best_perm = static_cast<int>(std::min_element(rep.residual.begin(), rep.residual.end()) - rep.residual.begin());
    }
    return out;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "t_re,t_im,x_re,x_im,y_re,y_im,f_re,f_im";
    for (const auto& s : off_diagonal_slots) os << ",eta" << s[0] + 1 << s[1] + 1 << "_re,eta" << s[0] + 1 << s[1] + 1 << "_im";
    os << '\n';
    os.precision(17);
    for (const auto& p : tr.points) {
        os << p.t.real() << ',' << p.t.imag() << ',' << p.x.real() << ',' << p.x.imag() << ',' << p.y.real() << ','
           << p.y.imag() << ',' << p.f.real() << ',' << p.f.imag();
        for (const auto& s : off_diagonal_slots) {
            auto v = eta(p, s[0], s[1]);
            if (v)
                os << ',' << v->real() << ',' << v->imag();
            else
                os << ",nan,nan";
        }
        os << '\n';
    }
}

}  // namespace crpvi
