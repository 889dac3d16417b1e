#pragma once

#include <vector>

#include "operators.hpp"

namespace vtn {

struct Gauge {
    enum class Kind { ZeroMean, FixOuter };
    Kind kind = Kind::ZeroMean;
    double h0 = 0.0;

    static Gauge zero_mean() { return {Kind::ZeroMean, 0.0}; }
    static Gauge fix_outer(double h) { return {Kind::FixOuter, h}; }
};

struct Tolerances {
    double compat = 1e-10;
    double residual = 1e-9;
};

// Problem data for D^alpha u = f on Omega, N_alpha u = g on the complement.
// f values outside B_N are ignored (stored as zero), f.outer is forced to 0.
struct NeumannProblem {
    Grid grid;
    LCFunction f;
    WeightFunction g;
    Gauge gauge;
    Tolerances tol;

    NeumannProblem(Grid grid_in, LCFunction f_in, WeightFunction g_in, Gauge gauge_in = {},
                   Tolerances tol_in = {});
};

enum class Method { Galerkin, Fredholm, FredholmInhomogeneous };

struct Residuals {
    double pde_max = 0.0;      // max |D^alpha u - f| over Omega cosets
    double neumann_max = 0.0;  // max |N_alpha u - g| over shells N+1..M+extra
    double compat = 0.0;       // int f + int g
};

struct Solution {
    LCFunction u;
    double h = 0.0;  // the Omega^c constant / domain mean
    Method method = Method::Galerkin;
    Residuals residuals;
};

struct CompatibilityReport {
    bool ok = false;
    double defect = 0.0;
};

CompatibilityReport check_compatibility(const NeumannProblem& problem);

// Direct recomputation of strong residuals from the operator definitions;
// never the solver's internal estimates.
Residuals compute_residuals(const LCFunction& u, const NeumannProblem& problem,
                            int extra_shells = 3);

// Gagliardo bilinear-form matrix over the basis {coset indicators, outer
// constant}, scaled by c/2. Size (coset_count + 1)^2; last row/column is the
// outer constant. Constants span the kernel.
Eigen::MatrixXd galerkin_matrix(const Grid& grid);

// Variational Galerkin solution in the trial space of level-nu LC functions
// with a constant tail; the rank-1 kernel is fixed by the gauge via a
// bordered (Lagrange multiplier) solve.
Solution solve_weak(const NeumannProblem& problem);

// Resolvent-kernel solution u = h + R f (mu = lambda_N) for g == 0.
Solution solve_strong(const NeumannProblem& problem);

// Strong solution with inhomogeneous Neumann data: outer shell values are set
// pointwise from the Neumann relation, the interior still solves via u = h + R f.
Solution solve_strong_inhomogeneous(const NeumannProblem& problem);

// Eigenvalues (ascending) of the restricted operator D_N = Regional + lambda_N I
// on the Omega cosets.
std::vector<double> spectrum(const Grid& grid, std::size_t dense_cap = 4096);

// Analytic spectrum {lambda_N} u {Q^{gamma m} with multiplicity Q^{N+m-1}(Q-1)},
// m = -N+1, ..., nu, as (eigenvalue, multiplicity) pairs in ascending order.
std::vector<std::pair<double, std::size_t>> analytic_spectrum(const FieldModel& field, int N,
                                                              int nu);

}  // namespace vtn
