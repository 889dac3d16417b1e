#include "report.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace vtn {

using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw InternalError("format_double: to_chars failed");
    return std::string(buf, ptr);
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ValidationError("spec: unknown key '" + key + "' in " + where);
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError("spec: missing key '" + std::string(key) +
                                               "' in " + where);
    return *it;
}

std::vector<double> as_double_vector(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ValidationError("spec: " + where + " must be an array");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) throw ValidationError("spec: " + where + " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

json report_to_json(const IdentityReport& r) {
    return json{{"name", r.name},     {"trial", r.trial},
                {"lhs", r.lhs},       {"rhs", r.rhs},
                {"abs_defect", r.abs_defect}, {"rel_defect", r.rel_defect},
                {"pass", r.pass}};
}

const char* method_name(Method m) {
    switch (m) {
        case Method::Galerkin: return "galerkin";
        case Method::Fredholm: return "fredholm";
        case Method::FredholmInhomogeneous: return "fredholm_inhomogeneous";
    }
    return "?";
}

FieldModel field_from_json(const json& j) {
    reject_unknown_keys(j, {"q", "n", "alpha"}, "field");
    if (!require(j, "q", "field").is_number_integer())
        throw ValidationError("spec: field.q must be an integer");
    if (!require(j, "n", "field").is_number_integer())
        throw ValidationError("spec: field.n must be an integer");
    return FieldModel::effective_params(j["q"].get<std::int64_t>(), j["n"].get<int>(),
                                        require(j, "alpha", "field").get<double>());
}

}  // namespace

ProblemSpec parse_spec(const std::string& json_text) try {
    json j = json::parse(json_text);
    if (!j.is_object()) throw ValidationError("spec: document must be a JSON object");
    reject_unknown_keys(j, {"field", "grid", "f", "g", "solver", "gauge", "tolerances"}, "spec");

    ProblemSpec spec;
    {
        const json& f = require(j, "field", "spec");
        const FieldModel fm = field_from_json(f);
        spec.q = fm.q;
        spec.n = fm.n;
        spec.alpha = fm.alpha;
    }
    {
        const json& g = require(j, "grid", "spec");
        reject_unknown_keys(g, {"N", "M", "nu"}, "grid");
        spec.N = require(g, "N", "grid").get<int>();
        spec.M = require(g, "M", "grid").get<int>();
        spec.nu = require(g, "nu", "grid").get<int>();
    }
    {
        const json& f = require(j, "f", "spec");
        reject_unknown_keys(f, {"kind", "values", "seed"}, "f");
        const std::string kind = require(f, "kind", "f").get<std::string>();
        if (kind == "values") {
            spec.f_kind = ProblemSpec::FKind::Values;
            spec.f_values = as_double_vector(require(f, "values", "f"), "f.values");
        } else if (kind == "zero_mean_random") {
            spec.f_kind = ProblemSpec::FKind::ZeroMeanRandom;
            spec.f_seed = require(f, "seed", "f").get<std::uint64_t>();
        } else {
            throw ValidationError("spec: f.kind must be 'values' or 'zero_mean_random'");
        }
    }
    {
        const json& g = require(j, "g", "spec");
        reject_unknown_keys(g, {"kind", "values"}, "g");
        const std::string kind = require(g, "kind", "g").get<std::string>();
        if (kind == "zero") {
            spec.g_kind = ProblemSpec::GKind::Zero;
        } else if (kind == "values") {
            spec.g_kind = ProblemSpec::GKind::Values;
            spec.g_values = as_double_vector(require(g, "values", "g"), "g.values");
        } else {
            throw ValidationError("spec: g.kind must be 'zero' or 'values'");
        }
    }
    {
        const std::string s = require(j, "solver", "spec").get<std::string>();
        if (s == "galerkin") spec.solver = Method::Galerkin;
        else if (s == "fredholm") spec.solver = Method::Fredholm;
        else if (s == "fredholm_inhomogeneous") spec.solver = Method::FredholmInhomogeneous;
        else throw ValidationError("spec: unknown solver '" + s + "'");
    }
    {
        const json& g = require(j, "gauge", "spec");
        reject_unknown_keys(g, {"kind", "h"}, "gauge");
        const std::string kind = require(g, "kind", "gauge").get<std::string>();
        if (kind == "zero_mean") spec.gauge = Gauge::zero_mean();
        else if (kind == "fix_outer")
            spec.gauge = Gauge::fix_outer(require(g, "h", "gauge").get<double>());
        else throw ValidationError("spec: gauge.kind must be 'zero_mean' or 'fix_outer'");
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        reject_unknown_keys(t, {"compat", "residual"}, "tolerances");
        if (t.contains("compat")) spec.tol.compat = t["compat"].get<double>();
        if (t.contains("residual")) spec.tol.residual = t["residual"].get<double>();
    }
    return spec;
} catch (const json::exception& e) {
    throw ValidationError(std::string("spec: ") + e.what());
}

std::string serialize_spec(const ProblemSpec& spec) {
    json f;
    if (spec.f_kind == ProblemSpec::FKind::Values)
        f = {{"kind", "values"}, {"values", spec.f_values}};
    else
        f = {{"kind", "zero_mean_random"}, {"seed", spec.f_seed}};
    json g;
    if (spec.g_kind == ProblemSpec::GKind::Zero)
        g = {{"kind", "zero"}};
    else
        g = {{"kind", "values"}, {"values", spec.g_values}};
    json gauge;
    if (spec.gauge.kind == Gauge::Kind::ZeroMean)
        gauge = {{"kind", "zero_mean"}};
    else
        gauge = {{"kind", "fix_outer"}, {"h", spec.gauge.h0}};
    json j{{"field", {{"q", spec.q}, {"n", spec.n}, {"alpha", spec.alpha}}},
           {"grid", {{"N", spec.N}, {"M", spec.M}, {"nu", spec.nu}}},
           {"f", f},
           {"g", g},
           {"solver", method_name(spec.solver)},
           {"gauge", gauge},
           {"tolerances", {{"compat", spec.tol.compat}, {"residual", spec.tol.residual}}}};
    return j.dump();
}

NeumannProblem build_problem(const ProblemSpec& spec) {
    const FieldModel field = FieldModel::effective_params(spec.q, spec.n, spec.alpha);
    Grid grid(field, spec.N, spec.M, spec.nu);

    LCFunction f = LCFunction::zero(grid);
    if (spec.f_kind == ProblemSpec::FKind::Values) {
        if (spec.f_values.size() != grid.omega_count())
            throw ValidationError("spec: f.values must have one entry per Omega coset");
        for (std::size_t i = 0; i < spec.f_values.size(); ++i) f.values[i] = spec.f_values[i];
    } else {
        f = random_zero_mean_f(grid, spec.f_seed);
    }

    WeightFunction g = WeightFunction::zero(grid);
    if (spec.g_kind == ProblemSpec::GKind::Values) {
        if (spec.g_values.size() != grid.coset_count() - grid.omega_count())
            throw ValidationError("spec: g.values must have one entry per B_M \\ B_N coset");
        g.values = spec.g_values;
    }

    return NeumannProblem(std::move(grid), std::move(f), std::move(g), spec.gauge, spec.tol);
}

namespace {

json solution_to_json(const Solution& sol) {
    return json{{"method", method_name(sol.method)},
                {"h", sol.h},
                {"outer", sol.u.outer},
                {"u", sol.u.values},
                {"residuals",
                 {{"pde_max", sol.residuals.pde_max},
                  {"neumann_max", sol.residuals.neumann_max},
                  {"compat", sol.residuals.compat}}}};
}

std::string solution_csv(const Solution& sol, const Grid& grid) {
    std::string out = "coset_id,level_region,value\n";
    for (std::size_t i = 0; i < grid.coset_count(); ++i) {
        out += grid.coset_id(i);
        out += ',';
        if (grid.in_omega(i))
            out += "omega";
        else
            out += "shell" + std::to_string(grid.shell_level(i));
        out += ',';
        out += format_double(sol.u.values[i]);
        out += '\n';
    }
    out += "outer," + format_double(sol.u.outer) + "\n";
    out += "# pde_max=" + format_double(sol.residuals.pde_max) + "\n";
    out += "# neumann_max=" + format_double(sol.residuals.neumann_max) + "\n";
    out += "# compat=" + format_double(sol.residuals.compat) + "\n";
    return out;
}

std::string reports_csv(const std::vector<IdentityReport>& reports) {
    std::string out = "name,trial,lhs,rhs,abs_defect,rel_defect,pass\n";
    for (const IdentityReport& r : reports) {
        out += r.name + ',' + std::to_string(r.trial) + ',' + format_double(r.lhs) + ',' +
               format_double(r.rhs) + ',' + format_double(r.abs_defect) + ',' +
               format_double(r.rel_defect) + ',' + (r.pass ? "true" : "false") + '\n';
    }
    return out;
}

}  // namespace

RunResult run_solve(const ProblemSpec& spec) {
    NeumannProblem problem = build_problem(spec);

    Solution sol = [&] {
        switch (spec.solver) {
            case Method::Galerkin: return solve_weak(problem);
            case Method::Fredholm: return solve_strong(problem);
            case Method::FredholmInhomogeneous: return solve_strong_inhomogeneous(problem);
        }
        throw InternalError("run_solve: unknown solver");
    }();

    const std::vector<IdentityReport> reports = residual_report(sol, problem);

    RunResult out;
    json j{{"solution", solution_to_json(sol)}, {"report", json::array()}};
    for (const IdentityReport& r : reports) j["report"].push_back(report_to_json(r));
    out.json = j.dump();
    out.csv = solution_csv(sol, problem.grid);
    return out;
}

RunResult run_verify(const FieldModel& field, int N, int M, int nu, int trials,
                     std::uint64_t seed, double perturb) {
    Grid grid(field, N, M, nu);
    std::vector<IdentityReport> reports = run_identity_suite(grid, trials, seed, perturb);

    // projection inequality on the same random stream, every coarse level
    SplitMix64 rng(seed + 0x9e3779b97f4a7c15ULL);
    for (int t = 0; t < trials; ++t) {
        const LCFunction f = random_lcfunction(grid, rng);
        for (int coarse = -N; coarse <= nu; ++coarse) {
            IdentityReport r = projection_inequality_check(f, coarse);
            r.trial = t;
            reports.push_back(r);
        }
    }

    bool all_pass = true;
    for (const IdentityReport& r : reports) all_pass = all_pass && r.pass;

    RunResult out;
    json j{{"grid", {{"q", field.q}, {"n", field.n}, {"alpha", field.alpha}, {"N", N},
                     {"M", M}, {"nu", nu}}},
           {"trials", trials},
           {"seed", seed},
           {"all_pass", all_pass},
           {"reports", json::array()}};
    for (const IdentityReport& r : reports) j["reports"].push_back(report_to_json(r));
    out.json = j.dump();
    out.csv = reports_csv(reports);
    out.status = all_pass ? ErrorCode::Ok : ErrorCode::Identity;
    return out;
}

RunResult run_spectrum(const FieldModel& field, int N, int nu, std::size_t cap) {
    Grid grid(field, N, N, nu);  // spectrum only needs Omega
    const std::vector<double> eigs = spectrum(grid, cap);
    const double lam = lambda_n(field, N);

    // cluster nearby eigenvalues into (value, multiplicity) pairs
    std::vector<std::pair<double, std::size_t>> clusters;
    for (double e : eigs) {
        if (!clusters.empty() &&
            std::abs(e - clusters.back().first) <= 1e-7 * std::max(1.0, std::abs(e)))
            ++clusters.back().second;
        else
            clusters.emplace_back(e, 1);
    }
    const bool min_ok = std::abs(eigs.front() - lam) <= 1e-9 * std::max(1.0, std::abs(lam));

    RunResult out;
    json j{{"lambda_N", lam}, {"min_is_lambda_N", min_ok}, {"eigenvalues", eigs},
           {"clusters", json::array()}};
    for (const auto& [v, m] : clusters) j["clusters"].push_back({{"value", v}, {"mult", m}});
    out.json = j.dump();
    std::string csv = "value,multiplicity\n";
    for (const auto& [v, m] : clusters) csv += format_double(v) + ',' + std::to_string(m) + '\n';
    csv += "# lambda_N=" + format_double(lam) + "\n";
    csv += std::string("# min_is_lambda_N=") + (min_ok ? "true" : "false") + "\n";
    out.csv = std::move(csv);
    out.status = min_ok ? ErrorCode::Ok : ErrorCode::Identity;
    return out;
}

RunResult run_kernel(const FieldModel& field, int N, std::optional<double> mu, int s_min,
                     int s_max) {
    if (s_min > s_max) throw ValidationError("kernel: s_min must be <= s_max");
    const double mu_val = mu.value_or(lambda_n(field, N));
    RunResult out;
    json rows = json::array();
    std::string csv = "s,r_mu\n";
    for (int s = s_min; s <= s_max; ++s) {
        const double r = resolvent_radial(field, N, mu_val, s);
        rows.push_back({{"s", s}, {"r", r}});
        csv += std::to_string(s) + ',' + format_double(r) + '\n';
    }
    out.json = json{{"N", N}, {"mu", mu_val}, {"rows", rows}}.dump();
    out.csv = std::move(csv);
    return out;
}

namespace {

json parse_params(const std::string& text) try {
    json j = json::parse(text);
    if (!j.is_object()) throw ValidationError("params: document must be a JSON object");
    return j;
} catch (const json::exception& e) {
    throw ValidationError(std::string("params: ") + e.what());
}

}  // namespace

RunResult run_verify_params(const std::string& params_json) try {
    json j = parse_params(params_json);
    reject_unknown_keys(j, {"field", "grid", "trials", "seed", "perturb"}, "verify params");
    const FieldModel field = field_from_json(require(j, "field", "verify params"));
    const json& g = require(j, "grid", "verify params");
    reject_unknown_keys(g, {"N", "M", "nu"}, "grid");
    const int trials = require(j, "trials", "verify params").get<int>();
    if (trials < 1) throw ValidationError("verify: trials must be >= 1");
    return run_verify(field, require(g, "N", "grid").get<int>(),
                      require(g, "M", "grid").get<int>(), require(g, "nu", "grid").get<int>(),
                      trials, j.value("seed", std::uint64_t{1}), j.value("perturb", 0.0));
} catch (const json::exception& e) {
    throw ValidationError(std::string("verify params: ") + e.what());
}

RunResult run_spectrum_params(const std::string& params_json) try {
    json j = parse_params(params_json);
    reject_unknown_keys(j, {"field", "grid", "cap"}, "spectrum params");
    const FieldModel field = field_from_json(require(j, "field", "spectrum params"));
    const json& g = require(j, "grid", "spectrum params");
    reject_unknown_keys(g, {"N", "nu"}, "grid");
    return run_spectrum(field, require(g, "N", "grid").get<int>(),
                        require(g, "nu", "grid").get<int>(),
                        j.value("cap", std::size_t{4096}));
} catch (const json::exception& e) {
    throw ValidationError(std::string("spectrum params: ") + e.what());
}

RunResult run_kernel_params(const std::string& params_json) try {
    json j = parse_params(params_json);
    reject_unknown_keys(j, {"field", "N", "mu", "s_min", "s_max"}, "kernel params");
    const FieldModel field = field_from_json(require(j, "field", "kernel params"));
    std::optional<double> mu;
    if (j.contains("mu") && !j["mu"].is_null()) mu = j["mu"].get<double>();
    return run_kernel(field, require(j, "N", "kernel params").get<int>(), mu,
                      require(j, "s_min", "kernel params").get<int>(),
                      require(j, "s_max", "kernel params").get<int>());
} catch (const json::exception& e) {
    throw ValidationError(std::string("kernel params: ") + e.what());
}

}  // namespace vtn
