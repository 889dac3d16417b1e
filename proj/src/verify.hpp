#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rng.hpp"
#include "solvers.hpp"

namespace vtn {

struct IdentityReport {
    std::string name;
    int trial = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_defect = 0.0;
    double rel_defect = 0.0;
    bool pass = false;
};

// Random locally constant function: coset values and outer constant i.i.d.
// uniform on [-1, 1) from the documented SplitMix64 stream.
LCFunction random_lcfunction(const Grid& grid, SplitMix64& rng);

// Zero-mean random data on Omega (zero elsewhere, outer 0).
LCFunction random_zero_mean_f(const Grid& grid, std::uint64_t seed);

// Truncated brute-force shell sum for the tail kernel integral; truncation is
// chosen so the geometric remainder is below rel_remainder of the total.
double oracle_tail_kernel(const FieldModel& field, int N, double rel_remainder = 1e-14);

// Ground truth for assemble_vt: naive pair summation on a refined grid plus
// the analytic tail remainder beyond B_{truncate_M}.
double oracle_apply_vt(const LCFunction& u, std::size_t coset, int refine_nu, int truncate_M);

// Integral of the Neumann operator over Omega^c: detail shells coset by
// coset, the far tail in closed form.
double integral_neumann(const LCFunction& u);

// Paper-identity suite over seeded random trials. perturb != 0 corrupts one
// assembled operator entry (negative-control hook for the CLI).
std::vector<IdentityReport> run_identity_suite(const Grid& grid, int trials, std::uint64_t seed,
                                               double perturb = 0.0);

// ||f - P(f)||^2_{L^2(Omega)} <= Q^{-coarse_nu * gamma} * Gagliardo_{Omega x Omega}(f).
IdentityReport projection_inequality_check(const LCFunction& f, int coarse_nu);

// Residual recomputation from first principles: PDE residual through the
// brute-force oracle, Neumann residual shell by shell, the printed Fredholm
// form as a diagnostic, compatibility defect, and the critical-point defect
// of the energy functional along random directions.
std::vector<IdentityReport> residual_report(const Solution& sol, const NeumannProblem& problem,
                                            int extra_shells = 3);

}  // namespace vtn
