#include "solvers.hpp"

#include <algorithm>
#include <cmath>

namespace vtn {

namespace {
constexpr double kCompatFloor = 1e-30;

bool all_zero(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}
}  // namespace

NeumannProblem::NeumannProblem(Grid grid_in, LCFunction f_in, WeightFunction g_in, Gauge gauge_in,
                               Tolerances tol_in)
    : grid(std::move(grid_in)),
      f(std::move(f_in)),
      g(std::move(g_in)),
      gauge(gauge_in),
      tol(tol_in) {
    if (!(f.grid == grid) || !(g.grid == grid))
        throw ValidationError("problem: f and g must live on the problem grid");
    if (!(tol.compat > 0.0) || !(tol.residual > 0.0))
        throw ValidationError("problem: tolerances must be positive");
    for (double v : f.values)
        if (!std::isfinite(v)) throw ValidationError("problem: f must be finite");
    for (double v : g.values)
        if (!std::isfinite(v)) throw ValidationError("problem: g must be finite");
    // f carries data on Omega only
    std::fill(f.values.begin() + static_cast<std::ptrdiff_t>(grid.omega_count()), f.values.end(),
              0.0);
    f.outer = 0.0;
}

CompatibilityReport check_compatibility(const NeumannProblem& problem) {
    const double defect = integrate(problem.f, Region::Omega) + problem.g.integral();
    double f_l1 = 0.0;
    for (std::size_t i = 0; i < problem.grid.omega_count(); ++i)
        f_l1 += std::abs(problem.f.values[i]);
    f_l1 *= problem.grid.coset_volume();
    const double scale = f_l1 + problem.g.l1_norm() + kCompatFloor;
    return {std::abs(defect) <= problem.tol.compat * scale, defect};
}

Residuals compute_residuals(const LCFunction& u, const NeumannProblem& problem,
                            int extra_shells) {
    const Grid& g = problem.grid;
    Residuals r;
    r.compat = check_compatibility(problem).defect;

    const OperatorMatrix vt = assemble_vt(g);
    const std::vector<double> au = vt.apply(u);
    for (std::size_t i = 0; i < g.omega_count(); ++i)
        r.pde_max = std::max(r.pde_max, std::abs(au[i] - problem.f.values[i]));

    for (int s = g.domain_level() + 1; s <= g.outer_level() + extra_shells; ++s) {
        const std::vector<double> trace = neumann_trace(u, s);
        if (s <= g.outer_level()) {
            const auto [b, e] = g.shell_range(s);
            for (std::size_t i = b; i < e; ++i)
                r.neumann_max = std::max(r.neumann_max, std::abs(trace[i - b] - problem.g.at(i)));
        } else {
            r.neumann_max = std::max(r.neumann_max, std::abs(trace[0]));
        }
    }
    return r;
}

Eigen::MatrixXd galerkin_matrix(const Grid& grid) {
    const std::size_t n = grid.coset_count();
    const Eigen::Index dim = static_cast<Eigen::Index>(n) + 1;
    const double c = coefficient_c(grid.field());
    const double vol = grid.coset_volume();
    const double tail = tail_kernel_integral(grid.field(), grid.outer_level());

    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(dim, dim);
    // off-diagonal coset couplings: pairs with at least one end in Omega
    for (std::size_t i = 0; i < n; ++i) {
        const bool i_in = grid.in_omega(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!i_in && !grid.in_omega(j)) continue;
            const double w = -2.0 * vol * vol * kernel_weight(grid.field(), grid.dist_level(i, j));
            G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
            G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = w;
        }
    }
    // outer-constant couplings: Omega cosets see the tail mass
    for (std::size_t i = 0; i < grid.omega_count(); ++i) {
        const double w = -2.0 * vol * tail;
        G(static_cast<Eigen::Index>(i), dim - 1) = w;
        G(dim - 1, static_cast<Eigen::Index>(i)) = w;
    }
    // diagonal completion: constants lie in the kernel
    for (Eigen::Index i = 0; i < dim; ++i) {
        G(i, i) = 0.0;
        G(i, i) = -G.row(i).sum();
    }
    return (0.5 * c) * G;
}

namespace {

Solution finish(LCFunction u, double h, Method method, const NeumannProblem& problem) {
    Solution sol{std::move(u), h, method, {}};
    sol.residuals = compute_residuals(sol.u, problem);
    return sol;
}

void require_compatible(const NeumannProblem& problem) {
    const CompatibilityReport rep = check_compatibility(problem);
    if (!rep.ok)
        throw IncompatibleError("compatibility condition int f = -int g violated", rep.defect);
}

}  // namespace

Solution solve_weak(const NeumannProblem& problem) {
    require_compatible(problem);
    const Grid& grid = problem.grid;
    const std::size_t n = grid.coset_count();
    const Eigen::Index dim = static_cast<Eigen::Index>(n) + 1;
    const double vol = grid.coset_volume();

    Eigen::MatrixXd A = galerkin_matrix(grid);

    Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i < grid.omega_count(); ++i)
        b(static_cast<Eigen::Index>(i)) = problem.f.values[i] * vol;
    for (std::size_t i = grid.omega_count(); i < n; ++i)
        b(static_cast<Eigen::Index>(i)) = problem.g.at(i) * vol;

    // bordered system: gauge constraint via one Lagrange multiplier
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
    B.topLeftCorner(dim, dim) = A;
    Eigen::VectorXd constraint = Eigen::VectorXd::Zero(dim);
    double target = 0.0;
    if (problem.gauge.kind == Gauge::Kind::ZeroMean) {
        for (std::size_t i = 0; i < grid.omega_count(); ++i)
            constraint(static_cast<Eigen::Index>(i)) = vol;
    } else {
        constraint(dim - 1) = 1.0;
        target = problem.gauge.h0;
    }
    B.col(dim).head(dim) = constraint;
    B.row(dim).head(dim) = constraint.transpose();

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim + 1);
    rhs.head(dim) = b;
    rhs(dim) = target;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible())
        throw InternalError("solve_weak: bordered system singular (rank deficiency not 1)");
    Eigen::VectorXd x = lu.solve(rhs);

    std::vector<double> vals(x.data(), x.data() + dim - 1);
    const double outer = x(dim - 1);
    LCFunction u(grid, std::move(vals), outer);
    return finish(std::move(u), outer, Method::Galerkin, problem);
}

Solution solve_strong(const NeumannProblem& problem) {
    if (!all_zero(problem.g.values))
        throw ValidationError("solve_strong: requires g == 0 (use the inhomogeneous solver)");
    require_compatible(problem);
    const Grid& grid = problem.grid;
    const double h = (problem.gauge.kind == Gauge::Kind::ZeroMean) ? 0.0 : problem.gauge.h0;

    const ResolventMatrix R(grid, lambda_n(grid.field(), grid.domain_level()));
    std::vector<double> f_omega(problem.f.values.begin(),
                                problem.f.values.begin() +
                                    static_cast<std::ptrdiff_t>(grid.omega_count()));
    const std::vector<double> rf = R.apply(f_omega);

    std::vector<double> vals(grid.coset_count(), h);
    for (std::size_t i = 0; i < grid.omega_count(); ++i) vals[i] = h + rf[i];
    LCFunction u(grid, std::move(vals), h);
    return finish(std::move(u), h, Method::Fredholm, problem);
}

Solution solve_strong_inhomogeneous(const NeumannProblem& problem) {
    require_compatible(problem);
    const Grid& grid = problem.grid;
    const FieldModel& field = grid.field();
    const double h = (problem.gauge.kind == Gauge::Kind::ZeroMean) ? 0.0 : problem.gauge.h0;

    const ResolventMatrix R(grid, lambda_n(field, grid.domain_level()));
    std::vector<double> f_omega(problem.f.values.begin(),
                                problem.f.values.begin() +
                                    static_cast<std::ptrdiff_t>(grid.omega_count()));
    const std::vector<double> rf = R.apply(f_omega);

    // outer values from the pointwise Neumann relation:
    // u(x) = (c Q^N)^{-1} |x|^{1+gamma} g(x) + h on the detail shells
    const double c = coefficient_c(field);
    const double dom_vol = ball_volume(field, grid.domain_level());
    std::vector<double> vals(grid.coset_count(), h);
    for (std::size_t i = 0; i < grid.omega_count(); ++i) vals[i] = h + rf[i];
    for (int s = grid.domain_level() + 1; s <= grid.outer_level(); ++s) {
        const auto [b, e] = grid.shell_range(s);
        const double scale = 1.0 / (c * dom_vol * kernel_weight(field, s));
        for (std::size_t i = b; i < e; ++i) vals[i] = scale * problem.g.at(i) + h;
    }
    LCFunction u(grid, std::move(vals), h);
    return finish(std::move(u), h, Method::FredholmInhomogeneous, problem);
}

std::vector<double> spectrum(const Grid& grid, std::size_t dense_cap) {
    if (grid.omega_count() > dense_cap)
        throw LimitError("spectrum: Omega coset count exceeds the dense eigensolve cap");
    const OperatorMatrix regional = assemble_regional(grid);
    Eigen::MatrixXd D = regional.interaction();
    const double lam = lambda_n(grid.field(), grid.domain_level());
    D.diagonal().array() += lam;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw InternalError("spectrum: eigensolve failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<std::pair<double, std::size_t>> analytic_spectrum(const FieldModel& field, int N,
                                                              int nu) {
    std::vector<std::pair<double, std::size_t>> out;
    out.emplace_back(lambda_n(field, N), 1);
    for (int m = -N + 1; m <= nu; ++m) {
        std::size_t mult = static_cast<std::size_t>(field.Q - 1);
        for (int i = 0; i < N + m - 1; ++i) mult *= static_cast<std::size_t>(field.Q);
        out.emplace_back(gamma_pow(field, m), mult);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace vtn
