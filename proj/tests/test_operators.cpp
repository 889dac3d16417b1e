#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "operators.hpp"
#include "rng.hpp"

using namespace vtn;

namespace {

const FieldModel kF = FieldModel::effective_params(2, 1, 2.0);

LCFunction random_fn(const Grid& g, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> v(g.coset_count());
    for (auto& x : v) x = rng.next_symmetric();
    return LCFunction(g, std::move(v), rng.next_symmetric());
}

}  // namespace

TEST_CASE("coefficient and lambda hand values") {
    CHECK(coefficient_c(kF) == doctest::Approx(24.0 / 7.0).epsilon(1e-14));
    CHECK(lambda_n(kF, 0) == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
    CHECK(lambda_n(kF, 1) == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("lambda_N equals c times the tail integral") {
    for (auto [q, alpha] : {std::pair<std::int64_t, double>{2, 2.0}, {2, 1.5}, {3, 1.2}}) {
        auto f = FieldModel::effective_params(q, 1, alpha);
        for (int N = -1; N <= 2; ++N)
            CHECK(lambda_n(f, N) ==
                  doctest::Approx(coefficient_c(f) * tail_kernel_integral(f, N))
                      .epsilon(1e-13));
    }
}

TEST_CASE("operator on the unit-ball indicator") {
    Grid g(kF, 0, 2, 1);
    std::vector<double> vals(g.coset_count(), 0.0);
    vals[0] = vals[1] = 1.0;  // indicator of B_0, Omega split into 2 cosets
    LCFunction u(g, std::move(vals), 0.0);

    auto op = assemble_vt(g);
    auto out = op.apply(u);
    CHECK(out[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-13));
    CHECK(out[1] == doctest::Approx(4.0 / 7.0).epsilon(1e-13));
    auto [b1, e1] = g.shell_range(1);
    for (std::size_t i = b1; i < e1; ++i)
        CHECK(out[i] == doctest::Approx(-3.0 / 7.0).epsilon(1e-13));
    auto [b2, e2] = g.shell_range(2);
    for (std::size_t i = b2; i < e2; ++i)
        CHECK(out[i] == doctest::Approx(-3.0 / 56.0).epsilon(1e-13));

    // Neumann trace on |y| = 4 agrees with the operator there
    auto tr = neumann_trace(u, 2);
    for (double t : tr) CHECK(t == doctest::Approx(-3.0 / 56.0).epsilon(1e-13));
    // beyond B_M a single value is returned
    auto far = neumann_trace(u, 5);
    CHECK(far.size() == 1);
    CHECK(far[0] == doctest::Approx(-24.0 / 7.0 * 1.0 / 32768.0).epsilon(1e-13));
    CHECK_THROWS_AS(neumann_trace(u, 0), ValidationError);
}

TEST_CASE("full operator annihilates constants") {
    Grid g(kF, 1, 2, 2);
    auto op = assemble_vt(g);
    auto out = op.apply(LCFunction::constant(g, 4.5));
    for (double x : out) CHECK(x == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("restricted decomposition on Omega") {
    // For u constant (= outer) outside B_N:
    //   D^alpha u = Regional u + lambda_N (u - outer) on Omega.
    Grid g(kF, 1, 2, 2);
    auto u = random_fn(g, 5);
    const double h = u.outer;
    for (std::size_t i = g.omega_count(); i < g.coset_count(); ++i) u.values[i] = h;

    auto vt = assemble_vt(g).apply(u);
    auto reg = assemble_regional(g).apply(u);
    const double lam = lambda_n(g.field(), g.domain_level());
    for (std::size_t i = 0; i < g.omega_count(); ++i)
        CHECK(vt[i] == doctest::Approx(reg[i] + lam * (u.values[i] - h)).epsilon(1e-12));
}

TEST_CASE("bilinear form: psd, symmetric, kernel is constants") {
    Grid g(kF, 0, 1, 1);
    auto u = random_fn(g, 7);
    auto v = random_fn(g, 8);
    CHECK(bilinear_form(u, v) == doctest::Approx(bilinear_form(v, u)).epsilon(1e-13));
    CHECK(bilinear_form(u, u) >= 0.0);
    auto one = LCFunction::constant(g, 1.0);
    CHECK(bilinear_form(one, one) == doctest::Approx(0.0));
    CHECK(bilinear_form(u, one) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("green identity with the halved constant") {
    // B(u,v) = int_Omega v D^alpha u + int_{Omega^c} v N_alpha u
    Grid g(kF, 0, 2, 1);
    auto u = random_fn(g, 9);
    auto v = random_fn(g, 10);

    auto du = assemble_vt(g).apply(u);
    double rhs = 0.0;
    const double vol = g.coset_volume();
    for (std::size_t i = 0; i < g.omega_count(); ++i) rhs += v.values[i] * du[i] * vol;
    for (int s = g.domain_level() + 1; s <= g.outer_level(); ++s) {
        auto tr = neumann_trace(u, s);
        auto [b, e] = g.shell_range(s);
        for (std::size_t i = b; i < e; ++i) rhs += v.values[i] * tr[i - b] * vol;
    }
    // tail: N u(y) = c (vol(B_N) outer_u - int u) |y|^{-1-gamma}, v = outer_v
    const double c = coefficient_c(g.field());
    const double mass = ball_volume(g.field(), g.domain_level()) * u.outer -
                        integrate(u, Region::Omega);
    rhs += v.outer * c * mass * tail_kernel_integral(g.field(), g.outer_level());

    CHECK(bilinear_form(u, v) == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("energy functional at a critical direction") {
    Grid g(kF, 0, 1, 1);
    LCFunction f(g, {1.0, -1.0, 0.0, 0.0}, 0.0);
    auto gw = WeightFunction::zero(g);
    LCFunction u(g, {0.25, -0.25, 0.0, 0.0}, 0.0);
    // J[u + t v] has derivative B(u,v) - int f v at t = 0; for the exact
    // solution the two cancel in every direction.
    auto v = random_fn(g, 13);
    double fv = 0.0;
    for (std::size_t i = 0; i < g.omega_count(); ++i)
        fv += f.values[i] * v.values[i] * g.coset_volume();
    CHECK(bilinear_form(u, v) == doctest::Approx(fv).epsilon(1e-12));
    // and the energy at u is below nearby points
    const double ju = energy_functional(u, f, gw);
    LCFunction up(g, {0.3, -0.25, 0.0, 0.0}, 0.0);
    CHECK(energy_functional(up, f, gw) > ju);
}

TEST_CASE("resolvent radial hand values") {
    const double mu = 1.0 / 7.0;  // lambda_1
    CHECK(resolvent_radial(kF, 1, mu, 1) == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(resolvent_radial(kF, 1, mu, 0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(resolvent_radial(kF, 1, mu, -1) == doctest::Approx(0.625).epsilon(1e-13));
    CHECK_THROWS_AS(resolvent_radial(kF, 1, mu, 2), ValidationError);
    CHECK_THROWS_AS(resolvent_radial(kF, 1, 0.0, 1), ValidationError);
}

TEST_CASE("resolvent matrix hand value and nullity") {
    Grid g(kF, 0, 1, 1);
    ResolventMatrix R(g, lambda_n(kF, 0));
    CHECK(R.entries()(0, 0) == doctest::Approx(0.125).epsilon(1e-13));
    CHECK(R.entries()(0, 1) == doctest::Approx(-0.125).epsilon(1e-13));
    CHECK(R.entries()(1, 0) == doctest::Approx(-0.125).epsilon(1e-13));
    CHECK(R.entries()(1, 1) == doctest::Approx(0.125).epsilon(1e-13));

    auto u = R.apply({1.0, -1.0});
    CHECK(u[0] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(u[1] == doctest::Approx(-0.25).epsilon(1e-13));

    // R annihilates constants at mu = lambda_N
    Grid g2(kF, 1, 2, 2);
    ResolventMatrix R2(g2, lambda_n(kF, 1));
    auto z = R2.apply(std::vector<double>(g2.omega_count(), 3.0));
    for (double x : z) CHECK(x == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("resolvent inverts the restricted operator modulo the mean") {
    // (Regional + lambda_N) R f = f - mean(f) on Omega
    Grid g(kF, 1, 2, 2);
    const double lam = lambda_n(kF, 1);
    ResolventMatrix R(g, lam);
    SplitMix64 rng(77);
    std::vector<double> f(g.omega_count());
    for (auto& x : f) x = rng.next_symmetric();

    auto rf = R.apply(f);
    std::vector<double> full(g.coset_count(), 0.0);
    std::copy(rf.begin(), rf.end(), full.begin());
    LCFunction urf(g, std::move(full), 0.0);
    auto reg = assemble_regional(g).apply(urf);

    double mean = 0.0;
    for (double x : f) mean += x;
    mean /= static_cast<double>(f.size());
    for (std::size_t i = 0; i < g.omega_count(); ++i)
        CHECK(reg[i] + lam * rf[i] == doctest::Approx(f[i] - mean).epsilon(1e-11));
}
