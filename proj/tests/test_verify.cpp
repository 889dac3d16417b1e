#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "verify.hpp"

using namespace vtn;

namespace {
const FieldModel kF = FieldModel::effective_params(2, 1, 2.0);
}

TEST_CASE("seeded randomness is reproducible") {
    Grid g(kF, 0, 1, 1);
    SplitMix64 a(42), b(42);
    auto u = random_lcfunction(g, a);
    auto v = random_lcfunction(g, b);
    CHECK(u.values == v.values);
    CHECK(u.outer == v.outer);
    for (double x : u.values) {
        CHECK(x >= -1.0);
        CHECK(x < 1.0);
    }

    auto f = random_zero_mean_f(g, 3);
    CHECK(integrate(f, Region::Omega) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(f.outer == 0.0);
    CHECK(f.values[2] == 0.0);
    CHECK(f.values[3] == 0.0);
}

TEST_CASE("tail oracle agrees with the closed form") {
    for (auto [q, alpha] : {std::pair<std::int64_t, double>{2, 2.0}, {2, 1.5}, {3, 1.2}}) {
        auto f = FieldModel::effective_params(q, 1, alpha);
        for (int N = -1; N <= 2; ++N)
            CHECK(oracle_tail_kernel(f, N) ==
                  doctest::Approx(tail_kernel_integral(f, N)).epsilon(1e-12));
    }
}

TEST_CASE("brute-force operator oracle agrees with assembly") {
    Grid g(kF, 0, 1, 1);
    SplitMix64 rng(17);
    auto u = random_lcfunction(g, rng);
    auto out = assemble_vt(g).apply(u);
    for (std::size_t i = 0; i < g.coset_count(); ++i)
        CHECK(oracle_apply_vt(u, i, 3, 3) == doctest::Approx(out[i]).epsilon(1e-10));
}

TEST_CASE("neumann integral balances the interior on the hand example") {
    Grid g(kF, 0, 1, 1);
    LCFunction ind(g, {1.0, 1.0, 0.0, 0.0}, 0.0);
    CHECK(integral_neumann(ind) == doctest::Approx(-4.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("identity suite passes on clean grids") {
    for (auto field : {kF, FieldModel::effective_params(2, 2, 4.0)}) {
        Grid g(field, 1, 2, 2);
        auto reports = run_identity_suite(g, 10, 2024);
        CHECK(!reports.empty());
        for (const auto& r : reports) {
            INFO(r.name, " trial ", r.trial, " rel ", r.rel_defect);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("perturbation is detected") {
    Grid g(kF, 1, 2, 2);
    auto reports = run_identity_suite(g, 5, 2024, 1e-3);
    CHECK(std::any_of(reports.begin(), reports.end(),
                      [](const IdentityReport& r) { return !r.pass; }));
}

TEST_CASE("projection inequality") {
    Grid g(kF, 1, 2, 2);
    SplitMix64 rng(99);
    for (int t = 0; t < 10; ++t) {
        auto f = random_lcfunction(g, rng);
        for (int coarse = -1; coarse <= 2; ++coarse) {
            auto rep = projection_inequality_check(f, coarse);
            INFO(rep.name, " coarse ", coarse);
            CHECK(rep.pass);
            CHECK(rep.lhs <= rep.rhs + 1e-12 * (1.0 + rep.rhs));
        }
    }
}

TEST_CASE("residual report on a solved problem") {
    Grid g(kF, 1, 2, 2);
    auto f = random_zero_mean_f(g, 7);
    NeumannProblem p(g, f, WeightFunction::zero(g));
    auto sol = solve_strong(p);
    auto reports = residual_report(sol, p);
    bool saw_diag = false;
    for (const auto& r : reports) {
        INFO(r.name, " rel ", r.rel_defect);
        CHECK(r.pass);
        if (r.name.find("7-7") != std::string::npos) saw_diag = true;
    }
    CHECK(saw_diag);
}
