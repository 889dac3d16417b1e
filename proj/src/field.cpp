#include "field.hpp"

#include <cmath>
#include <limits>

namespace vtn {

namespace {
constexpr std::size_t kMaxCosets = std::size_t{1} << 20;

bool is_integral(double x) { return x == std::floor(x); }
}  // namespace

FieldModel FieldModel::effective_params(std::int64_t q, int n, double alpha) {
    if (q < 2) throw ValidationError("field: residue cardinality q must be >= 2");
    if (n < 1) throw ValidationError("field: dimension n must be >= 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("field: alpha must be > 0");

    std::int64_t Q = 1;
    for (int i = 0; i < n; ++i) {
        if (Q > (std::int64_t{1} << 31) / q) throw LimitError("field: Q = q^n too large");
        Q *= q;
    }
    FieldModel f;
    f.q = q;
    f.n = n;
    f.alpha = alpha;
    f.Q = Q;
    f.gamma = alpha / n;
    return f;
}

double pow_int(double base, std::int64_t e) {
    if (e < 0) return 1.0 / pow_int(base, -e);
    double r = 1.0, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

double level_pow(const FieldModel& field, std::int64_t m) {
    return pow_int(static_cast<double>(field.Q), m);
}

double gamma_pow(const FieldModel& field, std::int64_t m) {
    if (is_integral(field.gamma))
        return pow_int(static_cast<double>(field.Q), m * static_cast<std::int64_t>(field.gamma));
    return std::pow(static_cast<double>(field.Q), static_cast<double>(m) * field.gamma);
}

double kernel_weight(const FieldModel& field, int level) {
    return level_pow(field, -level) * gamma_pow(field, -level);
}

double ball_volume(const FieldModel& field, int N) { return level_pow(field, N); }

double tail_kernel_integral(const FieldModel& field, int N) {
    if (!(field.gamma > 0.0)) throw ValidationError("tail_kernel_integral: gamma must be > 0");
    const double Q = static_cast<double>(field.Q);
    return (Q - 1.0) / (Q * (gamma_pow(field, 1) - 1.0)) * gamma_pow(field, -N);
}

double ball_character_integral(const FieldModel& field, int N, ALevel a_level) {
    if (!a_level.has_value() || *a_level <= -N) return ball_volume(field, N);
    return 0.0;
}

double shell_character_integral(const FieldModel& field, int m, int s) {
    const double Q = static_cast<double>(field.Q);
    if (m <= -s) return level_pow(field, m) * (1.0 - 1.0 / Q);
    if (m == -s + 1) return -level_pow(field, m - 1);
    return 0.0;
}

Grid::Grid(FieldModel field, int N, int M, int nu) : field_(field), N_(N), M_(M), nu_(nu) {
    if (M < N) throw ValidationError("grid: M must be >= N");
    if (nu < -N) throw ValidationError("grid: nu must be >= -N so cosets fit in B_N");
    const int depth = M + nu;
    std::size_t count = 1;
    for (int i = 0; i < depth; ++i) {
        if (count > kMaxCosets / static_cast<std::size_t>(field_.Q))
            throw LimitError("grid: coset count Q^{M+nu} exceeds the configured cap");
        count *= static_cast<std::size_t>(field_.Q);
    }
    coset_count_ = count;
    omega_count_ = 1;
    for (int i = 0; i < N + nu; ++i) omega_count_ *= static_cast<std::size_t>(field_.Q);
    coset_volume_ = level_pow(field_, -nu_);
}

int Grid::dist_level(std::size_t i, std::size_t j) const {
    if (i == j) throw InternalError("dist_level: identical cosets");
    const std::size_t Q = static_cast<std::size_t>(field_.Q);
    int t = 0;
    while (i != j) {
        i /= Q;
        j /= Q;
        ++t;
    }
    // most significant differing digit has tree depth t below the root scale
    return t - nu_;
}

int Grid::shell_level(std::size_t i) const {
    if (i == 0) throw InternalError("shell_level: coset 0 contains the origin");
    return dist_level(i, 0);
}

std::pair<std::size_t, std::size_t> Grid::shell_range(int s) const {
    if (s < 1 - nu_ || s > M_) throw ValidationError("shell_range: level out of range");
    std::size_t hi = 1;
    for (int i = 0; i < s + nu_; ++i) hi *= static_cast<std::size_t>(field_.Q);
    return {hi / static_cast<std::size_t>(field_.Q), hi};
}

std::size_t Grid::shell_count(int d) const {
    if (d < 1 - nu_ || d > M_) return 0;
    std::size_t r = static_cast<std::size_t>(field_.Q - 1);
    for (int i = 0; i < d + nu_ - 1; ++i) r *= static_cast<std::size_t>(field_.Q);
    return r;
}

std::string Grid::coset_id(std::size_t i) const {
    const int depth = M_ + nu_;
    if (depth == 0) return "0";
    std::vector<int> digits(static_cast<std::size_t>(depth), 0);
    for (int p = depth - 1; p >= 0; --p) {
        digits[static_cast<std::size_t>(p)] = static_cast<int>(i % static_cast<std::size_t>(field_.Q));
        i /= static_cast<std::size_t>(field_.Q);
    }
    std::string out;
    const bool sep = field_.Q > 10;
    for (int p = 0; p < depth; ++p) {
        if (sep && p > 0) out += '.';
        out += std::to_string(digits[static_cast<std::size_t>(p)]);
    }
    return out;
}

bool Grid::operator==(const Grid& other) const noexcept {
    return field_.Q == other.field_.Q && field_.gamma == other.field_.gamma && N_ == other.N_ &&
           M_ == other.M_ && nu_ == other.nu_;
}

CosetId CosetId::from_index(const Grid& grid, std::size_t index) {
    const int depth = grid.outer_level() + grid.resolution();
    CosetId id;
    id.digits.assign(static_cast<std::size_t>(depth), 0);
    for (int p = depth - 1; p >= 0; --p) {
        id.digits[static_cast<std::size_t>(p)] =
            static_cast<int>(index % static_cast<std::size_t>(grid.field().Q));
        index /= static_cast<std::size_t>(grid.field().Q);
    }
    return id;
}

std::size_t CosetId::to_index(const Grid& grid) const {
    const int depth = grid.outer_level() + grid.resolution();
    if (static_cast<int>(digits.size()) != depth)
        throw ValidationError("coset id: digit count does not match the grid");
    std::size_t index = 0;
    for (int d : digits) {
        if (d < 0 || d >= grid.field().Q) throw ValidationError("coset id: digit out of range");
        index = index * static_cast<std::size_t>(grid.field().Q) + static_cast<std::size_t>(d);
    }
    return index;
}

std::optional<int> coset_distance(const Grid& grid, const CosetId& a, const CosetId& b) {
    const int depth = grid.outer_level() + grid.resolution();
    if (static_cast<int>(a.digits.size()) != depth || static_cast<int>(b.digits.size()) != depth)
        throw ValidationError("coset_distance: ids do not belong to this grid");
    for (int p = 0; p < depth; ++p) {
        if (a.digits[static_cast<std::size_t>(p)] != b.digits[static_cast<std::size_t>(p)]) {
            // digit position p corresponds to j = -M + p, distance Q^{-j}
            return grid.outer_level() - p;
        }
    }
    return std::nullopt;
}

}  // namespace vtn
