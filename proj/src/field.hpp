#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace vtn {

// Effective ultrametric parameters. An n-dimensional problem over a field of
// residue cardinality q reduces to a one-dimensional engine with branching
// Q = q^n and exponent gamma = alpha/n; everything downstream works in (Q, gamma).
struct FieldModel {
    std::int64_t q = 2;
    int n = 1;
    double alpha = 1.0;
    std::int64_t Q = 2;     // q^n, exact integer arithmetic
    double gamma = 1.0;     // alpha / n

    static FieldModel effective_params(std::int64_t q, int n, double alpha);
};

// base^e by binary exponentiation, e may be negative.
double pow_int(double base, std::int64_t e);

// Q^m.
double level_pow(const FieldModel& field, std::int64_t m);

// Q^{m*gamma}; integer fast path when gamma is integral.
double gamma_pow(const FieldModel& field, std::int64_t m);

// 1 / d^{1+gamma} for d = Q^level, the kernel weight at a given distance level.
double kernel_weight(const FieldModel& field, int level);

// Haar measure of the ball of radius Q^N.
double ball_volume(const FieldModel& field, int N);

// Integral of |y|^{-gamma-1} over |y| > Q^N: (Q-1)/(Q(Q^gamma-1)) * Q^{-N*gamma}.
double tail_kernel_integral(const FieldModel& field, int N);

// Level of |a|: the exponent s with |a| = Q^s; std::nullopt encodes a = 0.
using ALevel = std::optional<int>;

// Integral of chi(a x) over the ball |x| <= Q^N: Q^N when |a| <= Q^{-N}, else 0.
double ball_character_integral(const FieldModel& field, int N, ALevel a_level);

// Integral of chi(eta x) over the shell |eta| = Q^m with |x| = Q^s:
//   Q^m (1 - 1/Q)  if m <= -s
//   -Q^{m-1}       if m == -s + 1
//   0              otherwise.
double shell_character_integral(const FieldModel& field, int m, int s);

// Finite coset tree of resolution Q^{-nu} inside the outer ball B_M, with the
// domain Omega = B_N. Cosets are flat indices in tree order: the base-Q digit
// string of the index, most significant first, lists the digits a_j for
// j = -M, ..., nu-1 of the representative. The first Q^{N+nu} cosets are
// exactly those inside B_N.
class Grid {
public:
    Grid(FieldModel field, int N, int M, int nu);

    const FieldModel& field() const noexcept { return field_; }
    int domain_level() const noexcept { return N_; }
    int outer_level() const noexcept { return M_; }
    int resolution() const noexcept { return nu_; }

    std::size_t coset_count() const noexcept { return coset_count_; }
    std::size_t omega_count() const noexcept { return omega_count_; }
    double coset_volume() const noexcept { return coset_volume_; }

    bool in_omega(std::size_t i) const noexcept { return i < omega_count_; }

    // Distance level d between distinct cosets: ||x - y|| = Q^d for any
    // representatives. Precondition i != j.
    int dist_level(std::size_t i, std::size_t j) const;

    // Level s with |x| = Q^s for representatives of coset i > 0; the zero
    // coset (i == 0) contains the origin.
    int shell_level(std::size_t i) const;

    // Half-open index range of the cosets forming the shell |x| = Q^s,
    // valid for 1 - nu <= s <= M.
    std::pair<std::size_t, std::size_t> shell_range(int s) const;

    // Number of cosets at distance exactly Q^d from a fixed coset:
    // Q^{nu+d-1}(Q-1) for 1-nu <= d <= M.
    std::size_t shell_count(int d) const;

    std::string coset_id(std::size_t i) const;

    bool operator==(const Grid& other) const noexcept;

private:
    FieldModel field_;
    int N_, M_, nu_;
    std::size_t coset_count_, omega_count_;
    double coset_volume_;
};

// Explicit digit form of a coset, digits indexed j = -M, ..., nu-1 in the
// stored order (most significant first).
struct CosetId {
    std::vector<int> digits;

    static CosetId from_index(const Grid& grid, std::size_t index);
    std::size_t to_index(const Grid& grid) const;
};

// Distance level between two cosets of the same grid; std::nullopt means the
// cosets coincide.
std::optional<int> coset_distance(const Grid& grid, const CosetId& a, const CosetId& b);

}  // namespace vtn
