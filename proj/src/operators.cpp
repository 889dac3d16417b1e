#include "operators.hpp"

#include <cmath>

namespace vtn {

double coefficient_c(const FieldModel& field) {
    if (!(field.alpha > 0.0)) throw ValidationError("coefficient_c: alpha must be > 0");
    return (gamma_pow(field, 1) - 1.0) /
           (1.0 - gamma_pow(field, -1) * level_pow(field, -1));
}

double lambda_n(const FieldModel& field, int N) {
    if (!(field.gamma > 0.0)) throw ValidationError("lambda_n: gamma must be > 0");
    const double Q = static_cast<double>(field.Q);
    return (Q - 1.0) / (Q * (1.0 - gamma_pow(field, -1) * level_pow(field, -1))) *
           gamma_pow(field, -N);
}

std::vector<double> OperatorMatrix::apply(const LCFunction& u) const {
    if (!(u.grid == grid_)) throw ValidationError("operator apply: grid mismatch");
    const Eigen::Index n = interaction_.rows();
    Eigen::Map<const Eigen::VectorXd> vals(u.values.data(), n);
    Eigen::VectorXd out = interaction_ * vals + tail_coeff_ * u.outer;
    return std::vector<double>(out.data(), out.data() + n);
}

// Shared assembly: pair weights c * vol / d(C,C')^{1+gamma} within the given
// index range, diagonal completed so rows of (interaction, tail) sum to the
// operator's action on the indicator.
OperatorMatrix OperatorMatrix::assemble(const Grid& grid, OperatorKind kind) {
    const std::size_t n = (kind == OperatorKind::FullVT) ? grid.coset_count() : grid.omega_count();
    const double c = coefficient_c(grid.field());
    const double vol = grid.coset_volume();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double row_mass = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double w = c * vol * kernel_weight(grid.field(), grid.dist_level(i, j));
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = -w;
            row_mass += w;
        }
        A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = row_mass;
    }
    Eigen::VectorXd tail = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    if (kind == OperatorKind::FullVT) {
        const double tail_mass = c * tail_kernel_integral(grid.field(), grid.outer_level());
        for (std::size_t i = 0; i < n; ++i) {
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += tail_mass;
            tail(static_cast<Eigen::Index>(i)) = -tail_mass;
        }
    }
    OperatorMatrix op(grid, kind);
    op.interaction_ = std::move(A);
    op.tail_coeff_ = std::move(tail);
    return op;
}

OperatorMatrix assemble_vt(const Grid& grid) {
    return OperatorMatrix::assemble(grid, OperatorKind::FullVT);
}

OperatorMatrix assemble_regional(const Grid& grid) {
    return OperatorMatrix::assemble(grid, OperatorKind::Regional);
}

std::vector<double> neumann_trace(const LCFunction& u, int s) {
    const Grid& g = u.grid;
    if (s <= g.domain_level()) throw ValidationError("neumann_trace: shell must lie outside B_N");
    const double c = coefficient_c(g.field());
    const double dom_vol = ball_volume(g.field(), g.domain_level());
    const double int_u = integrate(u, Region::Omega);
    const double w = kernel_weight(g.field(), s);  // |x|^{-1-gamma} on the shell
    if (s > g.outer_level()) return {c * (dom_vol * u.outer - int_u) * w};
    const auto [b, e] = g.shell_range(s);
    std::vector<double> out;
    out.reserve(e - b);
    for (std::size_t i = b; i < e; ++i)
        out.push_back(c * (dom_vol * u.values[i] - int_u) * w);
    return out;
}

double bilinear_form(const LCFunction& u, const LCFunction& v) {
    return 0.5 * coefficient_c(u.grid.field()) * gagliardo_full(u, v);
}

double energy_functional(const LCFunction& u, const LCFunction& f, const WeightFunction& g) {
    if (!(u.grid == f.grid) || !(u.grid == g.grid))
        throw ValidationError("energy_functional: grid mismatch");
    const Grid& grid = u.grid;
    const double vol = grid.coset_volume();
    double fu = 0.0;
    for (std::size_t i = 0; i < grid.omega_count(); ++i) fu += f.values[i] * u.values[i];
    double gu = 0.0;
    for (std::size_t i = grid.omega_count(); i < grid.coset_count(); ++i)
        gu += g.at(i) * u.values[i];
    return 0.25 * coefficient_c(grid.field()) * gagliardo_full(u, u) - (fu + gu) * vol;
}

double resolvent_radial(const FieldModel& field, int N, double mu, int s) {
    if (s > N) throw ValidationError("resolvent_radial: point must lie in B_N");
    if (!(mu > 0.0)) throw ValidationError("resolvent_radial: mu must be > 0");
    const double lam = lambda_n(field, N);
    double acc = 0.0;
    for (int m = -N + 1; m <= -s + 1; ++m) {
        const double denom = gamma_pow(field, m) - lam + mu;
        if (!(denom > 0.0))
            throw ValidationError("resolvent_radial: singular denominator, mu too small");
        acc += shell_character_integral(field, m, s) / denom;
    }
    return acc;
}

ResolventMatrix::ResolventMatrix(const Grid& grid, double mu) : grid_(grid), mu_(mu) {
    const FieldModel& f = grid.field();
    const int N = grid.domain_level();
    const int nu = grid.resolution();
    const double lam = lambda_n(f, N);
    const double vol = grid.coset_volume();
    const std::size_t n = grid.omega_count();

    // coset-averaged diagonal: integral of r_mu over a single coset
    double diag = 0.0;
    for (int m = -N + 1; m <= nu; ++m) {
        const double denom = gamma_pow(f, m) - lam + mu;
        if (!(denom > 0.0))
            throw ValidationError("resolvent_matrix: singular denominator, mu too small");
        diag += level_pow(f, m) * (1.0 - 1.0 / static_cast<double>(f.Q)) / denom;
    }
    diag *= vol;

    // radial off-diagonal values by distance level
    std::vector<double> radial(static_cast<std::size_t>(N + nu) + 1, 0.0);
    for (int d = 1 - nu; d <= N; ++d)
        radial[static_cast<std::size_t>(d - (1 - nu))] = vol * resolvent_radial(f, N, mu, d);

    entries_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag;
        for (std::size_t j = i + 1; j < n; ++j) {
            const int d = grid.dist_level(i, j);
            const double r = radial[static_cast<std::size_t>(d - (1 - nu))];
            entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r;
            entries_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = r;
        }
    }
}

std::vector<double> ResolventMatrix::apply(const std::vector<double>& omega_values) const {
    const Eigen::Index n = entries_.rows();
    if (static_cast<Eigen::Index>(omega_values.size()) != n)
        throw ValidationError("resolvent apply: size mismatch");
    Eigen::Map<const Eigen::VectorXd> v(omega_values.data(), n);
    Eigen::VectorXd out = entries_ * v;
    return std::vector<double>(out.data(), out.data() + n);
}

}  // namespace vtn
