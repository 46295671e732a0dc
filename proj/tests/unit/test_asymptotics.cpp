#include <doctest.h>

#include "../support.hpp"
#include "mertens/asymptotics.hpp"
#include "mertens/errors.hpp"
#include "mertens/special_functions.hpp"

using mertens::GridSpec;
using mertens::ResidualMethod;
using mertens::XFloat;
using support::abs_diff;

namespace {

const std::vector<mertens::ShiftedPoly>& polys() {
    static const auto p = mertens::p_family(24);
    return p;
}

const XFloat& mertens_B() {
    static const XFloat b = mertens::mertens_constant(1'000'000, support::table_1e6()).value;
    return b;
}

}  // namespace

TEST_CASE("default grid") {
    const auto g = mertens::grid_points(GridSpec{});
    REQUIRE(g.size() == 8);
    CHECK(g.front() == 1e3);
    CHECK(g.back() == 1e7);
    for (std::size_t i = 1; i < g.size(); ++i) {
        CHECK(g[i] > g[i - 1]);
        CHECK(std::log(g[i] / g[i - 1]) == doctest::Approx(std::log(1e4) / 7).epsilon(1e-12));
    }
}

TEST_CASE("grid points near integers are snapped") {
    const auto g = mertens::grid_points(GridSpec{.x_min = 1e3, .x_max = 1e5, .points = 3});
    REQUIRE(g.size() == 3);
    CHECK(g[1] == 1e4);
}

TEST_CASE("grid errors") {
    CHECK_THROWS_AS(mertens::grid_points(GridSpec{.points = 0}), mertens::DomainError);
    CHECK_THROWS_AS(mertens::grid_points(GridSpec{.points = 1}), mertens::DomainError);
    CHECK_THROWS_AS(mertens::grid_points(GridSpec{.x_min = 7.0}), mertens::DomainError);
    CHECK_THROWS_AS(mertens::grid_points(GridSpec{.x_min = 1e4, .x_max = 1e4}), mertens::DomainError);
    CHECK_THROWS_AS(mertens::residual_table(support::table_1e6(), 1, 0, GridSpec{.x_max = 1e6, .points = 0}, polys(),
                                            mertens_B()),
                    mertens::DomainError);
}

TEST_CASE("residual scale") {
    const double l = std::log(1e6), ll = std::log(l);
    CHECK(mertens::residual_scale(1, 0, 1e6).to_double() == doctest::Approx(l).epsilon(1e-14));
    CHECK(mertens::residual_scale(3, 0, 1e6).to_double() == doctest::Approx(l / (ll * ll)).epsilon(1e-14));
    CHECK(mertens::residual_scale(2, 1, 1e6).to_double() == doctest::Approx(1.0 / (ll * ll)).epsilon(1e-14));
    CHECK(mertens::residual_scale(2, 3, 1e6).to_double() == doctest::Approx(1.0 / (l * l * ll * ll)).epsilon(1e-14));
}

TEST_CASE("k = 1 residual table") {
    const auto& t = support::table_1e6();
    const GridSpec grid{.x_min = 1e3, .x_max = 1e6, .points = 5};
    const auto rows = mertens::residual_table(t, 1, 0, grid, polys(), mertens_B());
    REQUIRE(rows.size() == 5);
    double worst = 0.0;
    for (const auto& r : rows) {
        CHECK(r.k == 1);
        CHECK(r.s == 0);
        CHECK(r.exact == mertens::reciprocal_sum(t, r.x));
        CHECK(r.residual == r.exact - r.prediction);
        CHECK(abs_diff(r.scaled, r.residual * mertens::residual_scale(1, 0, r.x)) < 1e-30);
        CHECK(std::fabs(r.scaled.to_double()) < 0.05);
        worst = std::fmax(worst, std::fabs(r.scaled.to_double()));
    }
    CHECK(mertens::implied_constant(rows).to_double() == worst);
    CHECK(std::fabs(rows.back().residual.to_double()) < 1e-4);
}

TEST_CASE("implied constant preconditions") {
    const auto& t = support::table_1e6();
    const GridSpec grid{.x_min = 1e3, .x_max = 1e5, .points = 3};
    auto rows = mertens::residual_table(t, 2, 0, grid, polys(), mertens_B());
    const std::vector<mertens::ResidualRow> one = {rows[1]};
    CHECK(mertens::implied_constant(one) == mertens::abs(rows[1].scaled));
    CHECK_THROWS_AS(mertens::implied_constant({}), mertens::DomainError);
    auto mixed = rows;
    mixed.push_back(mertens::residual_table(t, 1, 0, grid, polys(), mertens_B()).front());
    CHECK_THROWS_AS(mertens::implied_constant(mixed), mertens::DomainError);
    auto mixed_s = rows;
    mixed_s.back().s = 1;
    CHECK_THROWS_AS(mertens::implied_constant(mixed_s), mertens::DomainError);
}

TEST_CASE("all methods feed identical exact columns") {
    const auto& t = support::table_1e6();
    const GridSpec grid{.x_min = 1e3, .x_max = 1e6, .points = 4};
    for (int k : {1, 2, 3}) {
        const auto e = mertens::residual_table(t, k, 0, grid, polys(), mertens_B(), ResidualMethod::Enumerate);
        const auto all = mertens::residual_table(t, k, 0, grid, polys(), mertens_B(), ResidualMethod::All);
        const auto ms = mertens::residual_table(t, k, 0, grid, polys(), mertens_B(), ResidualMethod::Multiset);
        for (std::size_t i = 0; i < e.size(); ++i) {
            CHECK(e[i].exact == all[i].exact);
            CHECK(support::rel_diff(e[i].exact, ms[i].exact) < 1e-12);
        }
    }
    CHECK_THROWS_AS(mertens::residual_table(t, 1, 0, grid, polys(), mertens_B(), ResidualMethod::Hyperbola),
                    mertens::DomainError);
    CHECK(mertens::parse_residual_method("all") == ResidualMethod::All);
    CHECK_THROWS_AS(mertens::parse_residual_method("best"), mertens::DomainError);
}

TEST_CASE("rows do not depend on the thread count") {
    const auto& t = support::table_1e6();
    const GridSpec grid{.x_min = 1e3, .x_max = 1e6, .points = 6};
    const auto a = mertens::residual_table(t, 2, 1, grid, polys(), mertens_B(), ResidualMethod::Enumerate, {.threads = 1});
    const auto b = mertens::residual_table(t, 2, 1, grid, polys(), mertens_B(), ResidualMethod::Enumerate, {.threads = 4});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].exact == b[i].exact);
        CHECK(a[i].scaled == b[i].scaled);
    }
}

TEST_CASE("convergence reports") {
    const auto& t = support::table_1e7();
    const GridSpec grid{};
    const auto r1 = mertens::convergence_report(t, 1, 0, grid, polys(), mertens_B());
    CHECK(r1.status == mertens::ConvergenceStatus::Convergent);
    CHECK(r1.trend_slope < 0.0);
    CHECK(r1.rows.size() == 8);
    CHECK(r1.max_scaled == mertens::implied_constant(r1.rows));
    const auto r2 = mertens::convergence_report(t, 2, 0, grid, polys(), mertens_B());
    CHECK(r2.status == mertens::ConvergenceStatus::Convergent);
    const auto w = mertens::convergence_report(t, 1, 1, GridSpec{.x_max = 1e6, .points = 4}, polys(), mertens_B());
    CHECK(w.status == mertens::ConvergenceStatus::NotApplicable);
    CHECK(std::isfinite(w.trend_slope));
    CHECK(mertens::status_name(mertens::ConvergenceStatus::Nonconvergent) == "NONCONVERGENT");
}

TEST_CASE("property: implied constants are stable under grid refinement") {
    const auto& t = support::table_1e7();
    for (int k : {1, 2, 3}) {
        const double coarse = mertens::implied_constant(mertens::residual_table(t, k, 0, GridSpec{}, polys(), mertens_B())).to_double();
        const double fine =
            mertens::implied_constant(mertens::residual_table(t, k, 0, GridSpec{.points = 16}, polys(), mertens_B())).to_double();
        CHECK(std::isfinite(coarse));
        CHECK(std::fabs(fine - coarse) < 0.5 * coarse);
    }
}
