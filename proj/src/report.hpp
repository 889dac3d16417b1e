#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "verify.hpp"

namespace vtn {

// Parsed form of the JSON problem document consumed by the solve command.
struct ProblemSpec {
    std::int64_t q = 2;
    int n = 1;
    double alpha = 1.0;
    int N = 0, M = 0, nu = 0;

    enum class FKind { Values, ZeroMeanRandom };
    FKind f_kind = FKind::Values;
    std::vector<double> f_values;  // Omega cosets, tree order
    std::uint64_t f_seed = 0;

    enum class GKind { Zero, Values };
    GKind g_kind = GKind::Zero;
    std::vector<double> g_values;  // B_M \ B_N cosets, tree order

    Method solver = Method::Galerkin;
    Gauge gauge;
    Tolerances tol;
};

// Strict parser: unknown keys and wrong array lengths are rejected.
ProblemSpec parse_spec(const std::string& json_text);
std::string serialize_spec(const ProblemSpec& spec);

NeumannProblem build_problem(const ProblemSpec& spec);

// One command run: machine-readable JSON plus the CSV table, and the status
// the C API / CLI should report.
struct RunResult {
    std::string json;
    std::string csv;
    ErrorCode status = ErrorCode::Ok;
};

RunResult run_solve(const ProblemSpec& spec);
RunResult run_verify(const FieldModel& field, int N, int M, int nu, int trials,
                     std::uint64_t seed, double perturb);
RunResult run_spectrum(const FieldModel& field, int N, int nu, std::size_t cap = 4096);
RunResult run_kernel(const FieldModel& field, int N, std::optional<double> mu, int s_min,
                     int s_max);

// Parameter documents used by the C API entry points.
RunResult run_verify_params(const std::string& params_json);
RunResult run_spectrum_params(const std::string& params_json);
RunResult run_kernel_params(const std::string& params_json);

// Shortest-round-trip decimal formatting shared by every CSV writer.
std::string format_double(double x);

}  // namespace vtn
