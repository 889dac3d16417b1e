#pragma once

#include <Eigen/Dense>

#include "lcfun.hpp"

namespace vtn {

// c_{n,alpha} = (q^alpha - 1)/(1 - q^{-alpha-n}) = (Q^gamma - 1)/(1 - Q^{-gamma-1}).
double coefficient_c(const FieldModel& field);

// Smallest eigenvalue of the restricted operator on B_N; equals
// c * tail_kernel_integral(N).
double lambda_n(const FieldModel& field, int N);

enum class OperatorKind { FullVT, Regional };

// Affine realization of the operator on locally constant functions: a dense
// symmetric interaction matrix over cosets plus a vector coupling each coset
// to the outer constant. Exact on LCFunctions since same-coset differences
// vanish and distances between distinct cosets are single levels.
class OperatorMatrix {
public:
    OperatorKind kind() const noexcept { return kind_; }
    const Grid& grid() const noexcept { return grid_; }
    const Eigen::MatrixXd& interaction() const noexcept { return interaction_; }
    const Eigen::VectorXd& tail_coeff() const noexcept { return tail_coeff_; }

    // FullVT: values over all B_M cosets (result outer is undefined, set to 0).
    // Regional: values over the Omega cosets only.
    std::vector<double> apply(const LCFunction& u) const;

    static OperatorMatrix assemble(const Grid& grid, OperatorKind kind);

    // debug hook: additive corruption of one interaction entry
    void perturb_entry(Eigen::Index row, Eigen::Index col, double delta) {
        interaction_(row, col) += delta;
    }

private:
    OperatorMatrix(Grid g, OperatorKind kind) : grid_(std::move(g)), kind_(kind) {}

    Grid grid_;
    OperatorKind kind_;
    Eigen::MatrixXd interaction_;
    Eigen::VectorXd tail_coeff_;
};

// Full Vladimirov-Taibleson operator on B_M cosets; annihilates constants.
OperatorMatrix assemble_vt(const Grid& grid);

// Regional operator: the same kernel integrated over Omega only.
OperatorMatrix assemble_regional(const Grid& grid);

// Neumann operator on the shell |x| = Q^s, s > N: exact since ||x-y|| = |x|
// for all y in Omega. For s <= M returns one value per shell coset; for
// s > M the shell sees only the outer constant and a single value is returned.
std::vector<double> neumann_trace(const LCFunction& u, int s);

// (c/2) * Gagliardo double integral over (K x K) \ (Omega^c x Omega^c);
// symmetric, positive semidefinite, kernel = global constants.
double bilinear_form(const LCFunction& u, const LCFunction& v);

// J[u] = (c/4) * seminorm^2 - int_Omega f u - int_{Omega^c} g u.
double energy_functional(const LCFunction& u, const LCFunction& f, const WeightFunction& g);

// Radial resolvent kernel r_mu at |x| = Q^s, s <= N: finite character-shell
// sum over m = -N+1, ..., -s+1.
double resolvent_radial(const FieldModel& field, int N, double mu, int s);

// Coset-averaged resolvent kernel matrix over the Omega cosets. The diagonal
// is the coset average of r_mu, a finite sum for every gamma > 0.
class ResolventMatrix {
public:
    ResolventMatrix(const Grid& grid, double mu);

    const Grid& grid() const noexcept { return grid_; }
    double mu() const noexcept { return mu_; }
    const Eigen::MatrixXd& entries() const noexcept { return entries_; }

    // R * f over the Omega cosets (integral against the kernel).
    std::vector<double> apply(const std::vector<double>& omega_values) const;

private:
    Grid grid_;
    double mu_;
    Eigen::MatrixXd entries_;
};

}  // namespace vtn
