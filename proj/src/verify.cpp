#include "verify.hpp"

#include <algorithm>
#include <cmath>

namespace vtn {

namespace {
constexpr double kIdentityTol = 1e-10;
constexpr double kEps = 1e-300;

double rel_defect_of(double lhs, double rhs, double scale = 0.0) {
    const double d = std::abs(lhs - rhs);
    return d / std::max({std::abs(lhs), std::abs(rhs), scale, kEps});
}

IdentityReport make_report(std::string name, int trial, double lhs, double rhs,
                           double scale = 0.0, double tol = kIdentityTol) {
    IdentityReport r;
    r.name = std::move(name);
    r.trial = trial;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_defect = std::abs(lhs - rhs);
    r.rel_defect = rel_defect_of(lhs, rhs, scale);
    r.pass = r.rel_defect <= tol;
    return r;
}
}  // namespace

LCFunction random_lcfunction(const Grid& grid, SplitMix64& rng) {
    std::vector<double> vals(grid.coset_count());
    for (double& v : vals) v = rng.next_symmetric();
    return LCFunction(grid, std::move(vals), rng.next_symmetric());
}

LCFunction random_zero_mean_f(const Grid& grid, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> vals(grid.coset_count(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.omega_count(); ++i) {
        vals[i] = rng.next_symmetric();
        sum += vals[i];
    }
    const double mean = sum / static_cast<double>(grid.omega_count());
    for (std::size_t i = 0; i < grid.omega_count(); ++i) vals[i] -= mean;
    return LCFunction(grid, std::move(vals), 0.0);
}

double oracle_tail_kernel(const FieldModel& field, int N, double rel_remainder) {
    const double Q = static_cast<double>(field.Q);
    const double ratio = gamma_pow(field, -1);  // Q^{-gamma} < 1
    double acc = 0.0;
    double term = (1.0 - 1.0 / Q) * gamma_pow(field, -(N + 1));  // j = N+1 shell
    for (int j = 0; j < 100000; ++j) {
        acc += term;
        const double remainder = term * ratio / (1.0 - ratio);
        if (remainder <= rel_remainder * acc) break;
        term *= ratio;
    }
    return acc;
}

double oracle_apply_vt(const LCFunction& u, std::size_t coset, int refine_nu, int truncate_M) {
    const Grid& g = u.grid;
    if (refine_nu < g.resolution() || truncate_M < g.outer_level())
        throw ValidationError("oracle_apply_vt: refinement must not coarsen");
    const LCFunction fine = refine(u, refine_nu, truncate_M);
    const Grid& fg = fine.grid;
    std::size_t per_parent = 1;
    for (int i = 0; i < refine_nu - g.resolution(); ++i)
        per_parent *= static_cast<std::size_t>(g.field().Q);
    const std::size_t target = coset * per_parent;  // first child of the original coset

    const double c = coefficient_c(fg.field());
    const double vol = fg.coset_volume();
    const double ut = fine.values[target];
    double acc = 0.0;
    for (std::size_t j = 0; j < fg.coset_count(); ++j) {
        if (j == target) continue;
        acc += (ut - fine.values[j]) * vol * kernel_weight(fg.field(), fg.dist_level(target, j));
    }
    acc += (ut - fine.outer) * tail_kernel_integral(fg.field(), truncate_M);
    return c * acc;
}

double integral_neumann(const LCFunction& u) {
    const Grid& g = u.grid;
    const double vol = g.coset_volume();
    double acc = 0.0;
    for (int s = g.domain_level() + 1; s <= g.outer_level(); ++s) {
        for (double t : neumann_trace(u, s)) acc += t * vol;
    }
    // beyond B_M the trace is constant per shell with closed-form total mass
    const double c = coefficient_c(g.field());
    const double dom_vol = ball_volume(g.field(), g.domain_level());
    acc += c * (dom_vol * u.outer - integrate(u, Region::Omega)) *
           tail_kernel_integral(g.field(), g.outer_level());
    return acc;
}

namespace {

// signed Omega x Omega kernel sum of (1-1), zero by antisymmetry; also
// returns the absolute-value sum as the scale for the relative defect
std::pair<double, double> antisymmetric_sum(const LCFunction& u) {
    const Grid& g = u.grid;
    const double c = coefficient_c(g.field());
    const double vol2 = g.coset_volume() * g.coset_volume();
    double signed_sum = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < g.omega_count(); ++i) {
        for (std::size_t j = 0; j < g.omega_count(); ++j) {
            if (i == j) continue;
            const double term =
                (u.values[i] - u.values[j]) * kernel_weight(g.field(), g.dist_level(i, j));
            signed_sum += term;
            scale += std::abs(term);
        }
    }
    return {c * vol2 * signed_sum, c * vol2 * scale};
}

double integral_v_du(const LCFunction& v, const std::vector<double>& du, const Grid& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < g.omega_count(); ++i) acc += v.values[i] * du[i];
    return acc * g.coset_volume();
}

double integral_v_neumann(const LCFunction& v, const LCFunction& u) {
    const Grid& g = u.grid;
    const double vol = g.coset_volume();
    double acc = 0.0;
    for (int s = g.domain_level() + 1; s <= g.outer_level(); ++s) {
        const auto [b, e] = g.shell_range(s);
        const std::vector<double> trace = neumann_trace(u, s);
        for (std::size_t i = b; i < e; ++i) acc += v.values[i] * trace[i - b] * vol;
    }
    const double c = coefficient_c(g.field());
    const double dom_vol = ball_volume(g.field(), g.domain_level());
    acc += v.outer * c * (dom_vol * u.outer - integrate(u, Region::Omega)) *
           tail_kernel_integral(g.field(), g.outer_level());
    return acc;
}

}  // namespace

std::vector<IdentityReport> run_identity_suite(const Grid& grid, int trials, std::uint64_t seed,
                                               double perturb) {
    if (trials < 1) throw ValidationError("identity suite: trials must be >= 1");
    const FieldModel& field = grid.field();
    const int N = grid.domain_level();
    const double lam = lambda_n(field, N);
    const double c = coefficient_c(field);

    OperatorMatrix vt = assemble_vt(grid);
    if (perturb != 0.0)
        vt.perturb_entry(0, static_cast<Eigen::Index>(grid.coset_count()) - 1, perturb);

    const ResolventMatrix R(grid, lam);
    const Eigen::VectorXd row_sums = R.entries().rowwise().sum();
    const double row_sum_max = row_sums.cwiseAbs().maxCoeff();
    const double row_scale = R.entries().cwiseAbs().rowwise().sum().maxCoeff();

    const std::vector<double> eigs = spectrum(grid);

    // trial-dependent draws first, grouped afterwards by (identity, trial)
    std::vector<IdentityReport> r41, r42, r43, r73, rres, rspec;
    SplitMix64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const LCFunction u = random_lcfunction(grid, rng);
        const LCFunction v = random_lcfunction(grid, rng);

        const auto [anti, anti_scale] = antisymmetric_sum(u);
        r41.push_back(make_report("4-1 omega antisymmetry", t, anti, 0.0, anti_scale));

        const std::vector<double> du = vt.apply(u);
        double int_du = 0.0, int_abs_du = 0.0;
        for (std::size_t i = 0; i < grid.omega_count(); ++i) {
            int_du += du[i];
            int_abs_du += std::abs(du[i]);
        }
        int_du *= grid.coset_volume();
        int_abs_du *= grid.coset_volume();
        r42.push_back(
            make_report("4-2 divergence", t, int_du, -integral_neumann(u), int_abs_du));

        const double green_lhs = bilinear_form(u, v);
        const double green_rhs = integral_v_du(v, du, grid) + integral_v_neumann(v, u);
        const double green_scale = std::sqrt(bilinear_form(u, u) * bilinear_form(v, v));
        r43.push_back(make_report("4-3 green identity", t, green_lhs, green_rhs, green_scale));

        r73.push_back(make_report("7-3 lambda tail mass", t,
                                  c * tail_kernel_integral(field, N), lam));
        rres.push_back(
            make_report("resolvent row-sum nullity", t, row_sum_max, 0.0, row_scale));
        rspec.push_back(make_report("spectrum minimality", t, eigs.front(), lam));
    }

    std::vector<IdentityReport> out;
    for (auto* group : {&r41, &r42, &r43, &r73, &rres, &rspec})
        out.insert(out.end(), group->begin(), group->end());
    return out;
}

IdentityReport projection_inequality_check(const LCFunction& f, int coarse_nu) {
    const Grid& g = f.grid;
    const LCFunction pf = project_average(f, coarse_nu);
    const double vol = g.coset_volume();
    double lhs = 0.0;
    for (std::size_t i = 0; i < g.omega_count(); ++i) {
        const double d = f.values[i] - pf.values[i];
        lhs += d * d;
    }
    lhs *= vol;
    const double rhs = gamma_pow(g.field(), -coarse_nu) * gagliardo_omega(f, f);

    IdentityReport r;
    r.name = "3-8 projection inequality";
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_defect = std::max(0.0, lhs - rhs);
    r.rel_defect = r.abs_defect / std::max({std::abs(lhs), std::abs(rhs), kEps});
    r.pass = lhs <= rhs + 1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1.0});
    return r;
}

std::vector<IdentityReport> residual_report(const Solution& sol, const NeumannProblem& problem,
                                            int extra_shells) {
    const Grid& g = problem.grid;
    const LCFunction& u = sol.u;
    const double rtol = problem.tol.residual;
    std::vector<IdentityReport> out;

    double f_inf = 0.0;
    for (std::size_t i = 0; i < g.omega_count(); ++i)
        f_inf = std::max(f_inf, std::abs(problem.f.values[i]));
    const double fscale = f_inf + 1.0;

    // PDE residual via the brute-force oracle on a refined grid; spot-check a
    // deterministic subset when Omega is large
    {
        double pde = 0.0;
        const std::size_t n = g.omega_count();
        const std::size_t stride = (n <= 128) ? 1 : (n / 64);
        for (std::size_t i = 0; i < n; i += stride) {
            const double du = oracle_apply_vt(u, i, g.resolution() + 1, g.outer_level() + 1);
            pde = std::max(pde, std::abs(du - problem.f.values[i]));
        }
        out.push_back(make_report("1-1 pde residual", 0, pde, 0.0, fscale, rtol));
    }

    // Neumann residual on every requested shell
    {
        double res = 0.0;
        for (int s = g.domain_level() + 1; s <= g.outer_level() + extra_shells; ++s) {
            const std::vector<double> trace = neumann_trace(u, s);
            if (s <= g.outer_level()) {
                const auto [b, e] = g.shell_range(s);
                for (std::size_t i = b; i < e; ++i)
                    res = std::max(res, std::abs(trace[i - b] - problem.g.at(i)));
            } else {
                res = std::max(res, std::abs(trace[0]));
            }
        }
        out.push_back(make_report("1-2 neumann residual", 0, res, 0.0, fscale, rtol));
    }

    // Printed Fredholm form u + lambda_N R u = R f: reported as a diagnostic
    // only; the direct substitution above is the acceptance criterion.
    {
        const double lam = lambda_n(g.field(), g.domain_level());
        const ResolventMatrix R(g, lam);
        std::vector<double> u_omega(u.values.begin(),
                                    u.values.begin() +
                                        static_cast<std::ptrdiff_t>(g.omega_count()));
        std::vector<double> f_omega(problem.f.values.begin(),
                                    problem.f.values.begin() +
                                        static_cast<std::ptrdiff_t>(g.omega_count()));
        const std::vector<double> ru = R.apply(u_omega);
        const std::vector<double> rf = R.apply(f_omega);
        double diag = 0.0;
        for (std::size_t i = 0; i < g.omega_count(); ++i)
            diag = std::max(diag, std::abs(u_omega[i] + lam * ru[i] - rf[i]));
        IdentityReport r = make_report("7-7 printed-form diagnostic", 0, diag, 0.0, fscale, rtol);
        r.pass = true;  // informational, documented discrepancy
        out.push_back(r);
    }

    {
        const CompatibilityReport comp = check_compatibility(problem);
        IdentityReport r = make_report("6-1 compatibility defect", 0, comp.defect, 0.0, 1.0,
                                       problem.tol.compat);
        r.pass = comp.ok;
        out.push_back(r);
    }

    // Euler-Lagrange defect of J along random directions
    {
        SplitMix64 rng(1);
        double worst = 0.0;
        const double vol = g.coset_volume();
        for (int k = 0; k < 5; ++k) {
            const LCFunction v = random_lcfunction(g, rng);
            double fv = 0.0, gv = 0.0;
            for (std::size_t i = 0; i < g.omega_count(); ++i)
                fv += problem.f.values[i] * v.values[i];
            for (std::size_t i = g.omega_count(); i < g.coset_count(); ++i)
                gv += problem.g.at(i) * v.values[i];
            const double defect = bilinear_form(u, v) - (fv + gv) * vol;
            worst = std::max(worst,
                             std::abs(defect) / sobolev_norm(v, WeightFunction::zero(g)));
        }
        out.push_back(make_report("5-2 critical point", 0, worst, 0.0, fscale, rtol));
    }

    return out;
}

}  // namespace vtn
