#include <doctest.h>

#include <random>

#include "iabopt/backend.hpp"
#include "iabopt/error.hpp"
#include "iabopt/model_ir.hpp"

using namespace iabopt;

namespace {

bool row_holds(const Constraint& row, std::span<const double> x) {
    const double a = row_activity(row, x);
    switch (row.sense) {
        case RowSense::Le: return a <= row.rhs + 1e-9;
        case RowSense::Ge: return a >= row.rhs - 1e-9;
        case RowSense::Eq: return std::abs(a - row.rhs) <= 1e-9;
    }
    return false;
}

}  // namespace

TEST_CASE("registry and rows") {
    ModelIR m;
    VarId x = m.add_variable("x", VarKind::Continuous, 0.0, 10.0);
    VarId y = m.add_binary("y");
    CHECK(m.find("x") == x);
    CHECK_FALSE(m.find("nope").has_value());
    CHECK_THROWS_AS(m.add_variable("x", VarKind::Continuous, 0, 1), Error);
    CHECK_THROWS_AS(m.add_variable("z", VarKind::Continuous, 2, 1), Error);
    LinearExpr e(3.0);
    e.add(x, 1.0).add(y, 2.0).add(x, 1.0);
    m.add_constraint("c", e, RowSense::Le, 8.0);
    const Constraint& row = m.constraints()[0];
    CHECK(row.terms.size() == 2);  // x merged
    CHECK(row.rhs == 5.0);
    CHECK(m.binary_count() == 1);
    std::vector<double> point{2.0, 1.0};
    CHECK(row_activity(row, point) == 6.0);
    CHECK(m.max_violation(point) == doctest::Approx(1.0));
    std::vector<double> fractional{1.0, 0.5};
    CHECK(m.max_violation(fractional) == doctest::Approx(0.5));
    m.set_objective(ObjSense::Maximize, LinearExpr().add(x, 1.0));
    const std::string lp = to_lp_format(m);
    CHECK(lp.find("Maximize") != std::string::npos);
    CHECK(lp.find("Binaries\n y") != std::string::npos);
}

TEST_CASE("indicator linearization") {
    ModelIR m;
    VarId s = m.add_variable("s", VarKind::Continuous, 0, 100);
    VarId i = m.add_variable("i", VarKind::Continuous, 0, 100);
    VarId phi = m.add_binary("phi");
    const double th = 2.0, big_m = 300.0;
    LinearExpr expr;
    expr.add(s, 1.0).add(i, -th);
    Constraint on = linearize_indicator(expr, phi, IndicatorSense::GeWhenOn, big_m);
    Constraint off = linearize_indicator(expr, phi, IndicatorSense::LeWhenOff, big_m);
    CHECK_THROWS_AS(linearize_indicator(expr, phi, IndicatorSense::GeWhenOn, 0.0), Error);

    SUBCASE("phi fixed to 1 reduces to S >= th I") {
        std::vector<double> ok{10, 5, 1}, bad{9, 5, 1};
        CHECK(row_holds(on, ok));
        CHECK_FALSE(row_holds(on, bad));
    }
    SUBCASE("phi fixed to 0 keeps S <= th I") {
        std::vector<double> ok{10, 5, 0}, bad{11, 5, 0};
        CHECK(row_holds(off, ok));
        CHECK_FALSE(row_holds(off, bad));
    }
    SUBCASE("grid: the big-M pair matches the implication") {
        for (int a = 0; a <= 100; a += 5)
            for (int b = 0; b <= 100; b += 5)
                for (int f = 0; f <= 1; ++f) {
                    std::vector<double> x{double(a), double(b), double(f)};
                    const double v = a - th * b;
                    const bool logic = f == 1 ? v >= 0 : v <= 0;
                    CHECK((row_holds(on, x) && row_holds(off, x)) == logic);
                }
    }
}

TEST_CASE("binary x continuous product") {
    ModelIR m;
    VarId b = m.add_binary("b");
    VarId x = m.add_variable("x", VarKind::Continuous, 0, 1);
    ProductLinearization p = linearize_binary_product(m, b, x, 1.0, "bx");
    CHECK(p.rows.size() == 3);
    auto feasible_aux = [&](double bv, double xv) {
        // Interval of aux values the rows allow.
        double lo = 0.0, hi = 1.0;
        for (double a = 0.0; a <= 1.0 + 1e-12; a += 0.01) {
            std::vector<double> pt{bv, xv, a};
            bool all = true;
            for (const auto& r : p.rows) all = all && row_holds(r, pt);
            if (all) {
                lo = std::min(lo, a);
                hi = a;
            }
        }
        return std::pair(lo, hi);
    };
    for (int bv = 0; bv <= 1; ++bv)
        for (double xv : {0.0, 0.37, 1.0}) {
            auto [lo, hi] = feasible_aux(bv, xv);
            CHECK(hi == doctest::Approx(bv * xv).epsilon(1e-9));
            CHECK(lo <= hi);
        }
    std::vector<double> pt{1.0, 0.37, 0.37};
    for (const auto& r : p.rows) CHECK(row_holds(r, pt));
    CHECK_THROWS_AS(linearize_binary_product(m, b, x, std::numeric_limits<double>::infinity(), "bad"), Error);
}

TEST_CASE("backend: trivial and infeasible models") {
    auto backend = make_default_backend();
    SUBCASE("one link") {
        ModelIR m;
        VarId z = m.add_variable("z", VarKind::Continuous, 0, 1000);
        VarId a = m.add_variable("alpha", VarKind::Continuous, 0, 1);
        m.add_constraint("cap", LinearExpr().add(z, 1.0).add(a, -150.0), RowSense::Le, 0.0);
        m.set_objective(ObjSense::Maximize, LinearExpr().add(z, 1.0));
        RawSolution r = solve(m, {}, *backend);
        CHECK(r.status == SolveStatus::Optimal);
        CHECK(r.objective == doctest::Approx(150.0));
    }
    SUBCASE("Z >= 10 with capacity 5") {
        ModelIR m;
        VarId z = m.add_variable("z", VarKind::Continuous, 10, 1000);
        VarId u = m.add_binary("use");
        m.add_constraint("cap", LinearExpr().add(z, 1.0).add(u, -5.0), RowSense::Le, 0.0);
        m.set_objective(ObjSense::Maximize, LinearExpr().add(z, 1.0));
        RawSolution r = solve(m, {}, *backend);
        CHECK(r.status == SolveStatus::Infeasible);
        CHECK_FALSE(r.has_solution);
    }
    SUBCASE("options validation") {
        ModelIR m;
        SolverOptions o;
        o.time_limit_s = 0.0;
        CHECK_THROWS_AS(solve(m, o, *backend), Error);
    }
}

TEST_CASE("backend: time limit on a market-split model") {
    // Equality knapsacks of this kind defeat branch and bound for a long time.
    std::mt19937_64 rng(5);
    ModelIR m;
    const int n = 40, rows = 5;
    std::vector<VarId> x;
    for (int j = 0; j < n; ++j) x.push_back(m.add_binary("x" + std::to_string(j)));
    for (int r = 0; r < rows; ++r) {
        LinearExpr e;
        long total = 0;
        for (int j = 0; j < n; ++j) {
            const int a = static_cast<int>(rng() % 100);
            total += a;
            e.add(x[j], a);
        }
        m.add_constraint("split" + std::to_string(r), e, RowSense::Eq, static_cast<double>(total / 2));
    }
    m.set_objective(ObjSense::Minimize, LinearExpr());
    SolverOptions o;
    o.time_limit_s = 0.01;
    auto backend = make_default_backend();
    RawSolution r = solve(m, o, *backend);
    CHECK(r.status == SolveStatus::TimeLimit);
    CHECK(r.runtime_s < 5.0);
}
