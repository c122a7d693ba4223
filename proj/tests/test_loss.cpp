#include "blasius/analysis.hpp"
#include "blasius/loss.hpp"
#include "blasius/shooting.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace blasius;

namespace {

ParamVector constant_output(double c) {
    ParamVector p = ParamVector::zeros({2, 8, 0});
    p.values().back() = c;  // output bias
    return p;
}

// One hidden unit: f = tanh(eps * eta) / eps, which is eta to within eps^2 eta^3.
ParamVector near_identity(double eps) {
    return ParamVector({1, 1, 0}, {eps, 0.0, 1.0 / eps, 0.0});
}

const ShootingResult& oracle() {
    static const ShootingResult s = shoot();
    return s;
}

} // namespace

TEST(CollocationGrid, UniformSpacingAndAnchors) {
    const CollocationGrid g = CollocationGrid::uniform(0.0, 8.0, 100);
    ASSERT_EQ(g.size(), 100u);
    EXPECT_EQ(g.points.front(), 0.0);
    EXPECT_EQ(g.points.back(), 8.0);
    const double h = 8.0 / 99.0;
    for (std::size_t i = 1; i < g.size(); ++i) {
        EXPECT_GT(g.points[i], g.points[i - 1]);
        EXPECT_NEAR(g.points[i] - g.points[i - 1], h, 1e-14);
    }
    const CollocationGrid neg = CollocationGrid::uniform(-5.69, 7.0, 100);
    EXPECT_EQ(neg.points.front(), -5.69);
    EXPECT_EQ(neg.points.back(), 7.0);
}

TEST(CollocationGrid, InvalidRejected) {
    EXPECT_THROW(CollocationGrid::uniform(0.0, 8.0, 1), std::invalid_argument);
    EXPECT_THROW(CollocationGrid::uniform(8.0, 0.0, 10), std::invalid_argument);
    EXPECT_THROW(CollocationGrid::uniform(1.0, 1.0, 10), std::invalid_argument);
    EXPECT_THROW(CollocationGrid::uniform(0.0, NAN, 10), std::invalid_argument);
}

TEST(LossResidual, ZeroNetwork) {
    const ParamVector z = ParamVector::zeros({2, 100, 0});
    for (double eta : {-5.0, 0.0, 4.0, 8.0}) EXPECT_EQ(residual(z, eta), 0.0);
}

TEST(LossResidual, MatchesJetDefinition) {
    const ParamVector p = init_params({2, 30, 4});
    for (double eta : {-1.0, 0.5, 6.0}) {
        const Jet3 j = forward_jet(p, eta);
        EXPECT_EQ(residual(p, eta), j.d3 + 0.5 * j.v * j.d2);
    }
}

TEST(LossResidual, OracleSatisfiesOdeAtOne) {
    // f''' from a central difference of the tabulated f'' around the node at eta = 1.
    const auto& rows = oracle().table.rows;
    const double h = oracle().h;
    const std::size_t i = static_cast<std::size_t>(std::llround(1.0 / h));
    ASSERT_NEAR(rows[i].eta, 1.0, 1e-12);
    const double fppp = (rows[i + 1].fpp - rows[i - 1].fpp) / (2 * h);
    EXPECT_LE(std::abs(fppp + 0.5 * rows[i].f * rows[i].fpp), 1e-6);
}

TEST(LossOde, ZeroNetworkAndSinglePoint) {
    EXPECT_EQ(loss_ode(ParamVector::zeros({2, 100, 0}), CollocationGrid::uniform(0, 8, 100)), 0.0);
    const ParamVector p = init_params({2, 100, 1});
    const double r0 = residual(p, 0.0);
    const double single[] = {0.0};
    EXPECT_EQ(loss_ode(p, single), r0 * r0);
}

TEST(LossOde, InvariantUnderReversal) {
    const ParamVector p = init_params({2, 100, 2});
    const CollocationGrid g = CollocationGrid::uniform(-5.69, 7.0, 100);
    std::vector<double> rev(g.points.rbegin(), g.points.rend());
    EXPECT_EQ(loss_ode(p, rev), loss_ode(p, g));
}

TEST(LossOde, SumSemantics) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const ParamVector p = init_params({2, 100, seed});
        const double n1 = loss_ode(p, CollocationGrid::uniform(0, 8, 100));
        const double n2 = loss_ode(p, CollocationGrid::uniform(0, 8, 200));
        EXPECT_GE(n2 / n1, 1.5);
        EXPECT_LE(n2 / n1, 2.5);
    }
}

TEST(LossInit, Examples) {
    EXPECT_EQ(loss_init(ParamVector::zeros({2, 100, 0}), 0.0), 0.0);
    EXPECT_DOUBLE_EQ(loss_init(constant_output(0.75), 0.0), 0.5625);
    EXPECT_DOUBLE_EQ(loss_init(constant_output(-2.0), 3.0), 4.0);
}

TEST(LossBoundary, Examples) {
    EXPECT_EQ(loss_boundary(ParamVector::zeros({2, 100, 0}), 8.0), 1.0);
    EXPECT_LE(loss_boundary(near_identity(1e-6), 8.0), 1e-18);
    const double fp8 = oracle().table.rows.back().fp;
    EXPECT_LE((fp8 - 1.0) * (fp8 - 1.0), 1e-8);
}

TEST(LossBoundary, LiteralVariantUsesValue) {
    const ParamVector c = constant_output(3.0);
    EXPECT_DOUBLE_EQ(loss_boundary(c, 8.0, BoundaryVariant::literal), 4.0);
    EXPECT_DOUBLE_EQ(loss_boundary(c, 8.0, BoundaryVariant::derivative), 1.0);
}

TEST(LossTotal, ZeroNetworkOnlyBoundaryContributes) {
    const LossBreakdown b = loss_total(ParamVector::zeros({2, 100, 0}), CollocationGrid::uniform(0, 8, 100));
    EXPECT_EQ(b.ode, 0.0);
    EXPECT_EQ(b.init, 0.0);
    EXPECT_EQ(b.boundary, 1.0);
    EXPECT_EQ(b.pin, 0.0);
    EXPECT_EQ(b.total, 1.0);
}

TEST(LossTotal, ExactSolutionIsNearZero) {
    const Evaluator exact = table_evaluator(oracle().table);
    for (std::size_t n : {2u, 17u, 100u, 400u}) {
        for (double lo : {0.0, 1.5}) {
            const CollocationGrid g = CollocationGrid::uniform(lo, 8.0, n);
            const auto jets = exact(g.points);
            const double ends[] = {0.0, g.eta_m};
            const auto anchors = exact(ends);
            const LossBreakdown b = assemble_loss(jets, anchors[0], anchors[1]);
            EXPECT_LE(b.total, 1e-8) << n;
            EXPECT_EQ(b.init, 0.0);
        }
    }
}

TEST(LossTotal, TermsMatchIndividualFunctions) {
    for (const auto& g : {CollocationGrid::uniform(0, 8, 100), CollocationGrid::uniform(-5.69, 7.0, 130)}) {
        const ParamVector p = init_params({2, 100, 6});
        const LossBreakdown b = loss_total(p, g, 0.332);
        EXPECT_EQ(b.ode, loss_ode(p, g));
        EXPECT_EQ(b.init, loss_init(p, 0.0));
        EXPECT_EQ(b.boundary, loss_boundary(p, g.eta_m));
        const double d = forward_jet(p, 0.0).d2 - 0.332;
        EXPECT_EQ(b.pin, d * d);
        EXPECT_EQ(b.total, b.ode + b.init + b.boundary + b.pin);
    }
}

TEST(LossTotal, NonNegativeAndAdditive) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ParamVector p = support::random_params({2, 12, 0}, seed, 2.0);
        const LossBreakdown b =
            loss_total(p, CollocationGrid::uniform(-2.0 + 0.1 * static_cast<double>(seed), 8.0, 40),
                       seed % 2 ? std::optional<double>(0.3) : std::nullopt,
                       seed % 3 ? BoundaryVariant::derivative : BoundaryVariant::literal);
        EXPECT_GE(b.ode, 0.0);
        EXPECT_GE(b.init, 0.0);
        EXPECT_GE(b.boundary, 0.0);
        EXPECT_GE(b.pin, 0.0);
        EXPECT_EQ(b.total, b.ode + b.init + b.boundary + b.pin);
        if (seed % 2 == 0) EXPECT_EQ(b.pin, 0.0);
    }
}

TEST(LossTotal, ZeroTotalMeansEveryConditionHolds) {
    // Hand-built jets: zero residual at every node, wall and far field exact.
    std::vector<Jet3> grid(5, Jet3{1.0, 1.0, 0.0, 0.0});
    const LossBreakdown b = assemble_loss(grid, {0, 0, 0.33, -0.0}, {6.0, 1.0, 0.0, 0.0}, 0.33);
    EXPECT_EQ(b.total, 0.0);
    EXPECT_EQ(b.ode, 0.0);
    EXPECT_EQ(b.init, 0.0);
    EXPECT_EQ(b.boundary, 0.0);
    EXPECT_EQ(b.pin, 0.0);
    grid[3].d3 = 1e-3;
    EXPECT_GT(assemble_loss(grid, {0, 0, 0.33, 0}, {6.0, 1.0, 0, 0}, 0.33).total, 0.0);
}
