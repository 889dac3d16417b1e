#pragma once

#include <vector>

#include "field.hpp"

namespace vtn {

// Exact locally constant function: one value per coset of the grid, plus a
// constant value on the complement of B_M.
struct LCFunction {
    Grid grid;
    std::vector<double> values;  // coset_count entries, tree order
    double outer = 0.0;

    LCFunction(Grid g, std::vector<double> vals, double outer_value);
    static LCFunction constant(const Grid& g, double value);
    static LCFunction zero(const Grid& g) { return constant(g, 0.0); }
};

// Weight supported on B_M \ B_N (used for rho and for Neumann data g);
// identically zero on B_N and beyond B_M, so the L^1(Omega^c) hypotheses hold
// by construction.
struct WeightFunction {
    Grid grid;
    std::vector<double> values;  // coset_count - omega_count entries

    WeightFunction(Grid g, std::vector<double> vals);
    static WeightFunction zero(const Grid& g);

    // Value on a global coset index (zero inside Omega).
    double at(std::size_t coset) const;
    double l1_norm() const;
    double integral() const;
};

enum class Region { Omega, OuterDetail, Tail, All };

// Exact coset sum of u over the region. Declared divergent when the region is
// unbounded and the outer constant is nonzero.
double integrate(const LCFunction& u, Region region);

double mean_over_domain(const LCFunction& u);

// Averaging projection P(f): on each coset of radius Q^{-coarse_nu} the value
// is the average of f over that coset. Idempotent and integral-preserving.
LCFunction project_average(const LCFunction& f, int coarse_nu);

// The same function represented on a finer grid: children copy the parent
// value, new shells take the outer constant.
LCFunction refine(const LCFunction& u, int finer_nu, int larger_M);

// Double integral of (u(x)-u(y))(v(x)-v(y)) / ||x-y||^{1+gamma} over
// Omega x Omega (ordered pairs). Same-coset pairs contribute exactly zero by
// local constancy, so the sum skips them with no singular handling.
double gagliardo_omega(const LCFunction& u, const LCFunction& v);

// The same double integral over (K x K) \ (Omega^c x Omega^c), tail handled
// by the closed-form kernel integral beyond B_M.
double gagliardo_full(const LCFunction& u, const LCFunction& v);

// Norm (L^2(Omega), weighted L^2 on the detail shells, Gagliardo part) and
// the matching inner product.
double sobolev_norm(const LCFunction& u, const WeightFunction& rho);
double sobolev_inner(const LCFunction& u, const LCFunction& v, const WeightFunction& rho);

}  // namespace vtn
