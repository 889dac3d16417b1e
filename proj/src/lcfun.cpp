#include "lcfun.hpp"

#include <cmath>

namespace vtn {

namespace {
constexpr std::size_t kDirectPairCap = 1024;  // above this, group pairs by distance level

void check_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw ValidationError(std::string(what) + ": grid mismatch");
}
}  // namespace

LCFunction::LCFunction(Grid g, std::vector<double> vals, double outer_value)
    : grid(std::move(g)), values(std::move(vals)), outer(outer_value) {
    if (values.size() != grid.coset_count())
        throw ValidationError("lcfunction: value count does not match the grid");
}

LCFunction LCFunction::constant(const Grid& g, double value) {
    return LCFunction(g, std::vector<double>(g.coset_count(), value), value);
}

WeightFunction::WeightFunction(Grid g, std::vector<double> vals)
    : grid(std::move(g)), values(std::move(vals)) {
    if (values.size() != grid.coset_count() - grid.omega_count())
        throw ValidationError("weight: value count does not match B_M \\ B_N");
}

WeightFunction WeightFunction::zero(const Grid& g) {
    return WeightFunction(g, std::vector<double>(g.coset_count() - g.omega_count(), 0.0));
}

double WeightFunction::at(std::size_t coset) const {
    if (coset < grid.omega_count()) return 0.0;
    return values[coset - grid.omega_count()];
}

double WeightFunction::l1_norm() const {
    double s = 0.0;
    for (double v : values) s += std::abs(v);
    return s * grid.coset_volume();
}

double WeightFunction::integral() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.coset_volume();
}

double integrate(const LCFunction& u, Region region) {
    const double vol = u.grid.coset_volume();
    double s = 0.0;
    switch (region) {
        case Region::Omega:
            for (std::size_t i = 0; i < u.grid.omega_count(); ++i) s += u.values[i];
            return s * vol;
        case Region::OuterDetail:
            for (std::size_t i = u.grid.omega_count(); i < u.grid.coset_count(); ++i)
                s += u.values[i];
            return s * vol;
        case Region::Tail:
            if (u.outer != 0.0)
                throw ValidationError("integrate: divergent integral of a nonzero constant tail");
            return 0.0;
        case Region::All:
            return integrate(u, Region::Omega) + integrate(u, Region::OuterDetail) +
                   integrate(u, Region::Tail);
    }
    throw InternalError("integrate: unknown region");
}

double mean_over_domain(const LCFunction& u) {
    return integrate(u, Region::Omega) / ball_volume(u.grid.field(), u.grid.domain_level());
}

LCFunction project_average(const LCFunction& f, int coarse_nu) {
    const Grid& g = f.grid;
    if (coarse_nu < -g.domain_level() || coarse_nu > g.resolution())
        throw ValidationError("project_average: coarse_nu out of range");
    std::size_t block = 1;
    for (int i = 0; i < g.resolution() - coarse_nu; ++i)
        block *= static_cast<std::size_t>(g.field().Q);
    std::vector<double> out(f.values.size());
    for (std::size_t start = 0; start < f.values.size(); start += block) {
        double sum = 0.0;
        for (std::size_t i = 0; i < block; ++i) sum += f.values[start + i];
        const double avg = sum / static_cast<double>(block);
        for (std::size_t i = 0; i < block; ++i) out[start + i] = avg;
    }
    return LCFunction(g, std::move(out), f.outer);
}

LCFunction refine(const LCFunction& u, int finer_nu, int larger_M) {
    const Grid& g = u.grid;
    if (finer_nu < g.resolution() || larger_M < g.outer_level())
        throw ValidationError("refine: target grid must be at least as fine");
    Grid fine(g.field(), g.domain_level(), larger_M, finer_nu);
    std::size_t per_parent = 1;
    for (int i = 0; i < finer_nu - g.resolution(); ++i)
        per_parent *= static_cast<std::size_t>(g.field().Q);
    const std::size_t old_span = g.coset_count() * per_parent;  // fine cosets covering B_M
    std::vector<double> out(fine.coset_count());
    for (std::size_t i = 0; i < fine.coset_count(); ++i)
        out[i] = (i < old_span) ? u.values[i / per_parent] : u.outer;
    return LCFunction(std::move(fine), std::move(out), u.outer);
}

namespace {

// Ordered-pair Gagliardo sum over Omega x Omega, direct O(n^2) iteration.
double omega_pairs_direct(const LCFunction& u, const LCFunction& v) {
    const Grid& g = u.grid;
    const std::size_t n = g.omega_count();
    const double vol2 = g.coset_volume() * g.coset_volume();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double du = u.values[i] - u.values[j];
            const double dv = v.values[i] - v.values[j];
            acc += 2.0 * du * dv * kernel_weight(g.field(), g.dist_level(i, j));
        }
    }
    return acc * vol2;
}

// Ordered-pair sum grouped by distance level via tree blocks, bottom up: the
// pairs at exact level d are the cross terms between the Q children of each
// level-d block,
//   sum_{i in A, j in B} (u_i-u_j)(v_i-v_j)
//     = |B| suv_A + |A| suv_B - su_A sv_B - su_B sv_A,
// with block sums aggregated locally so equal-valued fine blocks cancel to
// roundoff of their own magnitude (the fine-level kernel weights are large,
// so sums must not be formed as long-range prefix differences).
double omega_pairs_grouped(const LCFunction& u, const LCFunction& v) {
    const Grid& g = u.grid;
    const std::size_t n = g.omega_count();
    const std::size_t Q = static_cast<std::size_t>(g.field().Q);
    const double vol2 = g.coset_volume() * g.coset_volume();

    std::vector<double> su(n), sv(n), suv(n);
    for (std::size_t i = 0; i < n; ++i) {
        su[i] = u.values[i];
        sv[i] = v.values[i];
        suv[i] = u.values[i] * v.values[i];
    }

    double acc = 0.0;
    std::size_t blocks = n;     // current number of blocks
    double block_size = 1.0;    // cosets per block
    for (int d = 1 - g.resolution(); d <= g.domain_level(); ++d) {
        const double w = kernel_weight(g.field(), d);
        const std::size_t parents = blocks / Q;
        double level = 0.0;
        for (std::size_t p = 0; p < parents; ++p) {
            const std::size_t base = p * Q;
            for (std::size_t a = 0; a < Q; ++a)
                for (std::size_t b = a + 1; b < Q; ++b) {
                    const std::size_t ia = base + a, ib = base + b;
                    level += block_size * (suv[ia] + suv[ib]) - su[ia] * sv[ib] -
                             su[ib] * sv[ia];
                }
            // aggregate children into the parent slot
            double au = 0.0, av = 0.0, auv = 0.0;
            for (std::size_t c = 0; c < Q; ++c) {
                au += su[base + c];
                av += sv[base + c];
                auv += suv[base + c];
            }
            su[p] = au;
            sv[p] = av;
            suv[p] = auv;
        }
        acc += 2.0 * level * w;  // ordered pairs
        blocks = parents;
        block_size *= static_cast<double>(Q);
    }
    return acc * vol2;
}

// Cross term between a coset set and a shell at distance level s (the whole
// shell is equidistant from every point of Omega).
double cross_pairs(const LCFunction& u, const LCFunction& v, std::size_t a_begin,
                   std::size_t a_end, std::size_t b_begin, std::size_t b_end, double weight) {
    double su_a = 0.0, sv_a = 0.0, suv_a = 0.0;
    for (std::size_t i = a_begin; i < a_end; ++i) {
        su_a += u.values[i];
        sv_a += v.values[i];
        suv_a += u.values[i] * v.values[i];
    }
    double su_b = 0.0, sv_b = 0.0, suv_b = 0.0;
    for (std::size_t i = b_begin; i < b_end; ++i) {
        su_b += u.values[i];
        sv_b += v.values[i];
        suv_b += u.values[i] * v.values[i];
    }
    const double na = static_cast<double>(a_end - a_begin);
    const double nb = static_cast<double>(b_end - b_begin);
    return weight * (nb * suv_a - su_a * sv_b - sv_a * su_b + na * suv_b);
}

}  // namespace

double gagliardo_omega(const LCFunction& u, const LCFunction& v) {
    check_same_grid(u.grid, v.grid, "gagliardo_omega");
    if (u.grid.omega_count() <= kDirectPairCap) return omega_pairs_direct(u, v);
    return omega_pairs_grouped(u, v);
}

double gagliardo_full(const LCFunction& u, const LCFunction& v) {
    check_same_grid(u.grid, v.grid, "gagliardo_full");
    const Grid& g = u.grid;
    const double vol = g.coset_volume();

    double acc = gagliardo_omega(u, v);

    // Omega x detail shells, both orders.
    for (int s = g.domain_level() + 1; s <= g.outer_level(); ++s) {
        const auto [b, e] = g.shell_range(s);
        acc += 2.0 * vol * vol *
               cross_pairs(u, v, 0, g.omega_count(), b, e, kernel_weight(g.field(), s));
    }

    // Omega x tail beyond B_M, both orders; kernel mass in closed form.
    const double tail = tail_kernel_integral(g.field(), g.outer_level());
    double cross_tail = 0.0;
    for (std::size_t i = 0; i < g.omega_count(); ++i)
        cross_tail += (u.values[i] - u.outer) * (v.values[i] - v.outer);
    acc += 2.0 * vol * tail * cross_tail;

    return acc;
}

double sobolev_inner(const LCFunction& u, const LCFunction& v, const WeightFunction& rho) {
    check_same_grid(u.grid, v.grid, "sobolev_inner");
    check_same_grid(u.grid, rho.grid, "sobolev_inner");
    const Grid& g = u.grid;
    const double vol = g.coset_volume();
    double l2 = 0.0;
    for (std::size_t i = 0; i < g.omega_count(); ++i) l2 += u.values[i] * v.values[i];
    double weighted = 0.0;
    for (std::size_t i = g.omega_count(); i < g.coset_count(); ++i)
        weighted += std::abs(rho.at(i)) * u.values[i] * v.values[i];
    return (l2 + weighted) * vol + gagliardo_full(u, v);
}

double sobolev_norm(const LCFunction& u, const WeightFunction& rho) {
    return std::sqrt(sobolev_inner(u, u, rho));
}

}  // namespace vtn
