#include "crpvi/checks.hpp"
#include "crpvi/isomonodromy.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace crpvi;

namespace {

Rational R(long a, long b = 1) { return Rational(a, b); }

LambdaMu klein_lm() { return {{R(1, 2), R(1, 2), R(1, 2)}, {R(3, 14), R(5, 14), R(13, 14)}}; }

double final_x_error(const Trajectory& a, const Trajectory& b) { return std::abs(a.points.back().x - b.points.back().x); }

}  // namespace

TEST(SampleResidues, KleinSeedOne) {
    const ResidueConfig cfg = sample_residues(klein_lm(), 1);
    EXPECT_TRUE(check_invariants(cfg).ok());
    EXPECT_NEAR(std::abs(cfg.B[3].trace() + cplx(3.0 / 2.0)), 0.0, 1e-12);
    EXPECT_LT(std::abs(cfg.p * cfg.q - cfg.w * cfg.x * cfg.y), 1e-10);
    const CubicCoeffs cc = cubic_coeffs(klein_lm());
    EXPECT_LT(std::abs(cfg.w - (cc.c.to_double() - cfg.x - cfg.y)), 1e-10);
}

TEST(SampleResidues, ManySeedsAndParameters) {
    std::mt19937_64 rng(2);
    for (std::uint64_t s = 0; s < 40; ++s) {
        const LambdaMu lm = s % 2 ? klein_lm() : random_balanced_lm(rng);
        const ResidueConfig cfg = sample_residues(lm, s);
        const InvariantReport r = check_invariants(cfg);
        EXPECT_TRUE(r.ok()) << "seed " << s << ": rank " << r.rank_defect << " trace " << r.trace_error << " spectrum "
                            << r.spectrum_error;
        double trace_mu = 0;
        for (const auto& m : lm.mu) trace_mu += m.to_double();
        EXPECT_NEAR(std::abs(cfg.B[3].trace() + trace_mu), 0.0, 1e-10);
    }
}

TEST(SampleResidues, SeedDeterminism) {
    const ResidueConfig a = sample_residues(klein_lm(), 42), b = sample_residues(klein_lm(), 42);
    EXPECT_EQ(a.B[0], b.B[0]);
    EXPECT_EQ(a.B[3], b.B[3]);
}

TEST(SampleResidues, PreconditionOnSums) {
    const LambdaMu equal{{R(1, 2), R(1, 2), R(1, 2)}, {R(1, 2), R(1, 2), R(1, 2)}};
    EXPECT_TRUE(check_invariants(sample_residues(equal, 3)).ok());
    const LambdaMu bad{{R(1, 2), R(1, 2), R(1, 2)}, {R(1, 4), R(1, 4), R(1, 4)}};
    EXPECT_THROW(sample_residues(bad, 3), std::domain_error);
}

TEST(DiagonalizeB4, GaugePreservesInvariants) {
    const ResidueConfig cfg = diagonalize_b4(sample_residues(klein_lm(), 5));
    EXPECT_TRUE(check_invariants(cfg).ok());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) EXPECT_LT(std::abs(cfg.B[3](i, j)), 1e-12);
    EXPECT_NEAR(cfg.B[3](0, 0).real(), -3.0 / 14, 1e-10);
    EXPECT_NEAR(cfg.B[3](2, 2).real(), -13.0 / 14, 1e-10);
}

TEST(Paths, Validation) {
    EXPECT_THROW(check_path({}), std::invalid_argument);
    EXPECT_THROW(check_path(straight_path({-0.5, 0}, {0.5, 0})), std::invalid_argument);
    EXPECT_THROW(check_path(straight_path({0.5, 0}, {1.5, 0})), std::invalid_argument);
    EXPECT_NO_THROW(check_path(straight_path({0.5, 0}, {0.5, 2})));
    const Path broken{PathSegment::line({0.5, 0}, {0.6, 0}), PathSegment::line({0.7, 0}, {0.8, 0})};
    EXPECT_THROW(check_path(broken), std::invalid_argument);
    const Path loop{PathSegment::arc({1, 0}, 0.5, M_PI, 3 * M_PI)};
    EXPECT_NO_THROW(check_path(loop));
    EXPECT_NEAR(loop.front().length(), M_PI, 1e-12);
}

TEST(Schlesinger, RejectsMismatchedStart) {
    const ResidueConfig cfg = sample_residues(klein_lm(), 1);
    EXPECT_THROW(integrate_schlesinger(cfg, straight_path({0.4, 0}, {0.6, 0})), std::invalid_argument);
    EXPECT_THROW(integrate_schlesinger(cfg, straight_path({0.5, 0}, {0.6, 0}), -1.0), std::invalid_argument);
}

TEST(Schlesinger, ConservedQuantities) {
    const NumericReport rep = run_numeric(NumericOptions{});
    EXPECT_TRUE(rep.initial.ok());
    EXPECT_LT(rep.drift.b4_drift, 1e-12);
    EXPECT_LT(rep.drift.spectral_drift, 1e-8);
    EXPECT_LT(rep.drift.tr_b4_powers_drift, 1e-10);
    EXPECT_LT(rep.drift.wxy_drift, 1e-10);
    EXPECT_LT(rep.drift.f2_mismatch, 1e-8);
    EXPECT_LT(rep.reduced.max_deviation, 1e-6);
    EXPECT_EQ(rep.trajectory.points.size(), 301u);
    EXPECT_TRUE(verify_schlesinger(rep).ok);
}

TEST(Schlesinger, ArcAroundOne) {
    const ResidueConfig cfg = sample_residues(klein_lm(), 9, {0.5, 0});
    const Trajectory tr = integrate_schlesinger(cfg, {PathSegment::arc({1, 0}, 0.5, M_PI, 2 * M_PI)}, 1e-10, 1e-2);
    const TrajectoryChecks c = check_trajectory(tr);
    EXPECT_LT(c.spectral_drift, 1e-8);
    EXPECT_LT(c.wxy_drift, 1e-10);
    EXPECT_NEAR(std::abs(tr.points.back().t - cplx(1.5, 0)), 0.0, 1e-12);
}

// Global error at the endpoint shrinks as the local tolerance is tightened.
TEST(Schlesinger, ConvergenceStudy) {
    const ResidueConfig cfg = sample_residues(klein_lm(), 1);
    const Path path = straight_path({0.5, 0}, {0.8, 0.2});
    const Trajectory ref = integrate_schlesinger(cfg, path, 1e-13, 1.0);
    double prev = std::numeric_limits<double>::infinity();
    std::size_t prev_steps = 0;
    for (double tol : {1e-5, 1e-7, 1e-9}) {
        const Trajectory tr = integrate_schlesinger(cfg, path, tol, 1.0);
        const double err = final_x_error(tr, ref);
        EXPECT_LT(err, prev) << "tol " << tol;
        EXPECT_LT(err, 1e3 * tol) << "tol " << tol;
        EXPECT_GE(tr.accepted_steps, prev_steps);
        prev = err;
        prev_steps = tr.accepted_steps;
    }
}

TEST(EtaPvi, GenericSeedsHaveUniqueMinimizer) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        NumericOptions o;
        o.seed = seed;
        const NumericReport rep = run_numeric(o);
        const CheckResult r = verify_eta_pvi(rep);
        EXPECT_TRUE(r.ok) << "seed " << seed << ": " << r.detail;
        for (const auto& s : rep.slots) {
            if (s.skipped) continue;
            EXPECT_LT(s.best(), 1e-3);
            EXPECT_EQ(s.count_below(1e-3), 1u);
        }
    }
}

TEST(EtaPvi, TorusConfigurationSkipsEverySlot) {
    ResidueConfig cfg;
    cfg.lm = {{R(1, 2), R(1, 3), R(1, 4)}, {R(1, 2), R(1, 3), R(1, 4)}};
    cfg.t = {0.5, 0};
    cfg.B[0] = CMat3::Zero();
    cfg.B[1] = CMat3::Zero();
    cfg.B[2] = CMat3::Zero();
    cfg.B[0](0, 0) = 0.5;
    cfg.B[1](1, 1) = 1.0 / 3;
    cfg.B[2](2, 2) = 0.25;
    cfg.B[3] = -(cfg.B[0] + cfg.B[1] + cfg.B[2]);
    const Trajectory tr = integrate_schlesinger(cfg, straight_path({0.5, 0}, {0.6, 0}), 1e-10, 1e-2);
    const auto slots = eta_pvi_residual(tr, cfg.lm);
    for (const auto& s : slots) {
        EXPECT_TRUE(s.skipped);
        EXPECT_FALSE(s.diagnostic.empty());
    }
    NumericReport rep;
    rep.slots = slots;
    EXPECT_FALSE(verify_eta_pvi(rep).ok);
}

TEST(EtaPvi, RequiresDiagonalB4AndUniformGrid) {
    const ResidueConfig raw = sample_residues(klein_lm(), 1);
    const Trajectory tr = integrate_schlesinger(raw, straight_path({0.5, 0}, {0.52, 0}), 1e-10, 1e-3);
    EXPECT_THROW(eta_pvi_residual(tr, klein_lm()), std::invalid_argument);
    Trajectory few = integrate_schlesinger(diagonalize_b4(raw), straight_path({0.5, 0}, {0.503, 0}), 1e-10, 1e-3);
    EXPECT_THROW(eta_pvi_residual(few, klein_lm()), std::invalid_argument);
}

TEST(TrajectoryCsv, HeaderAndRows) {
    const ResidueConfig cfg = diagonalize_b4(sample_residues(klein_lm(), 1));
    const Trajectory tr = integrate_schlesinger(cfg, straight_path({0.5, 0}, {0.51, 0}), 1e-10, 1e-3);
    std::ostringstream os;
    write_trajectory_csv(os, tr);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line.rfind("t_re,t_im,x_re,x_im,y_re,y_im,f_re,f_im,eta12_re", 0), 0u);
    std::size_t rows = 0;
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, tr.points.size());
}
