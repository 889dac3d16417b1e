// Batch front end for the solver library; links only the C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vtn/vtn.h"

namespace {

int exit_code_for(int status) {
    switch (status) {
        case VTN_OK: return 0;
        case VTN_ERR_INCOMPATIBLE: return 2;
        case VTN_ERR_IDENTITY: return 3;
        default: return 1;
    }
}

void print_last_error() {
    const char* err = vtn_last_error();
    std::cerr << (err ? err : R"({"code":5,"error":"unknown error"})") << "\n";
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string field_json(std::int64_t q, int n, double alpha) {
    return "{\"q\":" + std::to_string(q) + ",\"n\":" + std::to_string(n) +
           ",\"alpha\":" + fmt(alpha) + "}";
}

void warn_if_small_alpha(int n, double alpha) {
    if (alpha / n <= 1.0)
        std::cerr << "warning: effective exponent gamma = alpha/n <= 1; the continuum L1 "
                     "theory assumes alpha > 1, discrete results remain well-defined\n";
}

int emit(vtn_result* result, const std::string& format, const std::string& out_path) {
    const char* text = (format == "csv") ? vtn_result_csv(result) : vtn_result_json(result);
    if (out_path.empty()) {
        std::cout << text;
        if (format != "csv") std::cout << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << R"({"code":1,"error":"cannot open output file"})" << "\n";
            return 1;
        }
        out << text;
        if (format != "csv") out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal Neumann solver for the Vladimirov-Taibleson operator"};
    app.require_subcommand(1);

    std::int64_t q = 2;
    int n = 1;
    double alpha = 2.0;

    auto add_field_flags = [&](CLI::App* cmd) {
        cmd->add_option("--q", q, "residue cardinality of the base field");
        cmd->add_option("--n", n, "dimension");
        cmd->add_option("--alpha", alpha, "operator exponent");
    };

    // solve
    auto* solve = app.add_subcommand("solve", "solve a problem from a JSON spec");
    std::string spec_path, out_path, format = "json";
    solve->add_option("--spec", spec_path, "problem spec JSON file")->required();
    solve->add_option("--out", out_path, "output file (default: stdout)");
    solve->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // verify
    auto* verify = app.add_subcommand("verify", "run the identity suite");
    int N = 1, M = 2, nu = 2, trials = 20;
    std::uint64_t seed = 1;
    double perturb = 0.0;
    add_field_flags(verify);
    verify->add_option("--N", N, "domain ball exponent");
    verify->add_option("--M", M, "outer detail exponent");
    verify->add_option("--nu", nu, "resolution exponent");
    verify->add_option("--trials", trials, "random trials");
    verify->add_option("--seed", seed, "PRNG seed");
    verify->add_option("--perturb", perturb, "debug: corrupt one matrix entry");
    verify->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the restricted operator");
    std::size_t cap = 4096;
    add_field_flags(spectrum);
    spectrum->add_option("--N", N, "domain ball exponent");
    spectrum->add_option("--nu", nu, "resolution exponent");
    spectrum->add_option("--cap", cap, "dense eigensolve cap");
    spectrum->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // kernel
    auto* kernel = app.add_subcommand("kernel", "radial resolvent kernel table");
    std::optional<double> mu;
    int s_min = 0, s_max = 0;
    add_field_flags(kernel);
    kernel->add_option("--N", N, "domain ball exponent");
    kernel->add_option("--mu", mu, "resolvent parameter (default: lambda_N)");
    kernel->add_option("--s-min", s_min, "lowest shell level");
    kernel->add_option("--s-max", s_max, "highest shell level");
    kernel->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::ostringstream msg;
        msg << R"({"code":1,"error":")" << e.what() << R"("})";
        std::cerr << msg.str() << "\n";
        return 1;
    }

    vtn_result* result = nullptr;
    int status = VTN_OK;

    if (solve->parsed()) {
        std::ifstream in(spec_path, std::ios::binary);
        if (!in) {
            std::cerr << R"({"code":1,"error":"cannot read spec file"})" << "\n";
            return 1;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        status = vtn_solve(buf.str().c_str(), &result);
    } else if (verify->parsed()) {
        warn_if_small_alpha(n, alpha);
        const std::string params =
            "{\"field\":" + field_json(q, n, alpha) + ",\"grid\":{\"N\":" + std::to_string(N) +
            ",\"M\":" + std::to_string(M) + ",\"nu\":" + std::to_string(nu) +
            "},\"trials\":" + std::to_string(trials) + ",\"seed\":" + std::to_string(seed) +
            ",\"perturb\":" + fmt(perturb) + "}";
        status = vtn_verify(params.c_str(), &result);
    } else if (spectrum->parsed()) {
        warn_if_small_alpha(n, alpha);
        const std::string params = "{\"field\":" + field_json(q, n, alpha) +
                                   ",\"grid\":{\"N\":" + std::to_string(N) +
                                   ",\"nu\":" + std::to_string(nu) +
                                   "},\"cap\":" + std::to_string(cap) + "}";
        status = vtn_spectrum(params.c_str(), &result);
    } else if (kernel->parsed()) {
        warn_if_small_alpha(n, alpha);
        std::string params = "{\"field\":" + field_json(q, n, alpha) +
                             ",\"N\":" + std::to_string(N);
        params += mu.has_value() ? ",\"mu\":" + fmt(*mu) : std::string(",\"mu\":null");
        params += ",\"s_min\":" + std::to_string(s_min) +
                  ",\"s_max\":" + std::to_string(s_max) + "}";
        if (!kernel->count("--format")) format = "csv";
        status = vtn_kernel(params.c_str(), &result);
    }

    if (result == nullptr) {
        print_last_error();
        return exit_code_for(status);
    }

    const int emit_rc = emit(result, format, solve->parsed() ? out_path : std::string());
    vtn_result_free(result);
    if (emit_rc != 0) return emit_rc;
    return exit_code_for(status);
}
