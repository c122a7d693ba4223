#include "blasius/gradient.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

using namespace blasius;

namespace {

const CollocationGrid kStandard = CollocationGrid::uniform(0.0, 8.0, 100);
const CollocationGrid kNegative = CollocationGrid::uniform(-5.69, 7.0, 100);

class ScopedThreads {
public:
    explicit ScopedThreads(const char* n) {
        if (const char* old = std::getenv("BLASIUS_THREADS")) saved_ = old;
        setenv("BLASIUS_THREADS", n, 1);
    }
    ~ScopedThreads() {
        if (saved_.empty()) {
            unsetenv("BLASIUS_THREADS");
        } else {
            setenv("BLASIUS_THREADS", saved_.c_str(), 1);
        }
    }

private:
    std::string saved_;
};

} // namespace

TEST(Gradient, LossMatchesLossTotalExactly) {
    const ParamVector p = support::perturbed_init({2, 100, 1}, 1);
    for (const auto& g : {kStandard, kNegative}) {
        EXPECT_EQ(loss_and_grad(p, g).loss, loss_total(p, g));
        EXPECT_EQ(loss_and_grad(p, g, 0.33).loss, loss_total(p, g, 0.33));
    }
}

TEST(Gradient, ShapeAndFiniteness) {
    const ParamVector p = init_params({3, 40, 2});
    const GradResult r = loss_and_grad(p, kStandard);
    ASSERT_EQ(r.grad.size(), p.size());
    for (double x : r.grad) EXPECT_TRUE(std::isfinite(x));
}

TEST(Gradient, ZeroNetworkHasZeroGradient) {
    const ParamVector z = ParamVector::zeros({2, 100, 0});
    const GradResult r = loss_and_grad(z, kStandard);
    EXPECT_EQ(r.loss.total, 1.0);
    for (double x : r.grad) EXPECT_EQ(x, 0.0);
    const auto fd = support::check_gradient(z, kStandard, std::nullopt, 50, 5);
    EXPECT_EQ(fd.failures, 0u);
}

TEST(Gradient, MatchesFiniteDifferencesStandardGrid) {
    for (std::uint64_t s : {1u, 2u, 3u}) {
        const auto r = support::check_gradient(support::perturbed_init({2, 100, s}, 100 + s), kStandard, std::nullopt,
                                               50, 200 + s);
        EXPECT_EQ(r.failures, 0u) << "setting " << s << " worst " << r.worst_rel;
    }
}

TEST(Gradient, MatchesFiniteDifferencesPinnedNegativeGrid) {
    for (std::uint64_t s : {4u, 5u, 6u}) {
        const auto r =
            support::check_gradient(support::perturbed_init({2, 100, s}, 100 + s), kNegative, 0.33206, 50, 300 + s);
        EXPECT_EQ(r.failures, 0u) << "setting " << s << " worst " << r.worst_rel;
    }
}

TEST(Gradient, MatchesFiniteDifferencesDeepNarrow) {
    const auto r = support::check_gradient(support::perturbed_init({4, 12, 9}, 9), kStandard, 0.2, 80, 9);
    EXPECT_EQ(r.failures, 0u) << "worst " << r.worst_rel;
}

TEST(Gradient, LiteralBoundaryVariant) {
    const ParamVector p = support::perturbed_init({2, 16, 3}, 3);
    const GradResult r = loss_and_grad(p, kStandard, std::nullopt, BoundaryVariant::literal);
    ParamVector q = p;
    for (std::size_t i : {0u, 17u, 40u, static_cast<unsigned>(p.size() - 1)}) {
        const double x = p.values()[i], h = 1e-5;
        q.values()[i] = x + h;
        const double up = loss_total(q, kStandard, std::nullopt, BoundaryVariant::literal).total;
        q.values()[i] = x - h;
        const double down = loss_total(q, kStandard, std::nullopt, BoundaryVariant::literal).total;
        q.values()[i] = x;
        const double fd = (up - down) / (2 * h);
        EXPECT_LE(std::abs(r.grad[i] - fd), std::max(1e-5 * std::abs(fd), 1e-8)) << i;
    }
}

TEST(Gradient, LinearInTheLoss) {
    // d(L_A + L_B) by finite differences against grad L_A + grad L_B.
    const ParamVector p = support::perturbed_init({2, 30, 7}, 7);
    const CollocationGrid a = CollocationGrid::uniform(0.0, 8.0, 60);
    const CollocationGrid b = CollocationGrid::uniform(-3.0, 6.0, 45);
    const GradResult ga = loss_and_grad(p, a), gb = loss_and_grad(p, b);
    ParamVector q = p;
    for (std::size_t i = 0; i < p.size(); i += 37) {
        const double x = p.values()[i], h = 1e-5;
        q.values()[i] = x + h;
        const double up = loss_total(q, a).total + loss_total(q, b).total;
        q.values()[i] = x - h;
        const double down = loss_total(q, a).total + loss_total(q, b).total;
        q.values()[i] = x;
        const double fd = (up - down) / (2 * h);
        EXPECT_LE(std::abs(ga.grad[i] + gb.grad[i] - fd), std::max(1e-5 * std::abs(fd), 1e-8)) << i;
    }
}

TEST(Gradient, BitIdenticalAcrossCallsAndThreadCounts) {
    const ParamVector p = support::perturbed_init({2, 100, 8}, 8);
    const CollocationGrid g = CollocationGrid::uniform(0.0, 8.0, 300);
    GradResult one, many;
    {
        ScopedThreads t("1");
        one = loss_and_grad(p, g);
        const GradResult again = loss_and_grad(p, g);
        EXPECT_EQ(one.loss, again.loss);
        EXPECT_EQ(one.grad, again.grad);
    }
    {
        ScopedThreads t("4");
        many = loss_and_grad(p, g);
    }
    EXPECT_EQ(one.loss, many.loss);
    EXPECT_EQ(one.grad, many.grad);
}

TEST(Gradient, NonFiniteOutputReportsEta) {
    ParamVector p = init_params({2, 10, 1});
    p.values().back() = std::numeric_limits<double>::quiet_NaN();
    try {
        (void)loss_and_grad(p, kNegative);
        FAIL() << "expected DivergenceError";
    } catch (const DivergenceError& e) {
        EXPECT_EQ(e.eta(), kNegative.points.front());
    }
    EXPECT_THROW((void)loss_total(p, kStandard), DivergenceError);
}
