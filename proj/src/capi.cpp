#include "vtn/vtn.h"

#include <string>

#include <json.hpp>

#include "report.hpp"

struct vtn_result {
    std::string json;
    std::string csv;
};

namespace {

thread_local std::string g_last_error;

void set_error(int code, const std::string& message, double defect = 0.0, bool has_defect = false) {
    nlohmann::json j{{"code", code}, {"error", message}};
    if (has_defect) j["defect"] = defect;
    g_last_error = j.dump();
}

int store(vtn::RunResult&& run, vtn_result** out) {
    *out = new vtn_result{std::move(run.json), std::move(run.csv)};
    return static_cast<int>(run.status);
}

template <typename Fn>
int guarded(vtn_result** out, Fn&& fn) {
    if (out == nullptr) {
        set_error(VTN_ERR_VALIDATION, "output handle must not be null");
        return VTN_ERR_VALIDATION;
    }
    *out = nullptr;
    try {
        return fn();
    } catch (const vtn::IncompatibleError& e) {
        set_error(VTN_ERR_INCOMPATIBLE, e.what(), e.defect(), true);
        return VTN_ERR_INCOMPATIBLE;
    } catch (const vtn::Error& e) {
        set_error(static_cast<int>(e.code()), e.what());
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        set_error(VTN_ERR_INTERNAL, e.what());
        return VTN_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

int vtn_solve(const char* spec_json, vtn_result** out) {
    return guarded(out, [&] {
        if (spec_json == nullptr) throw vtn::ValidationError("spec must not be null");
        return store(vtn::run_solve(vtn::parse_spec(spec_json)), out);
    });
}

int vtn_verify(const char* params_json, vtn_result** out) {
    return guarded(out, [&] {
        if (params_json == nullptr) throw vtn::ValidationError("params must not be null");
        return store(vtn::run_verify_params(params_json), out);
    });
}

int vtn_spectrum(const char* params_json, vtn_result** out) {
    return guarded(out, [&] {
        if (params_json == nullptr) throw vtn::ValidationError("params must not be null");
        return store(vtn::run_spectrum_params(params_json), out);
    });
}

int vtn_kernel(const char* params_json, vtn_result** out) {
    return guarded(out, [&] {
        if (params_json == nullptr) throw vtn::ValidationError("params must not be null");
        return store(vtn::run_kernel_params(params_json), out);
    });
}

const char* vtn_result_json(const vtn_result* result) {
    return result ? result->json.c_str() : nullptr;
}

const char* vtn_result_csv(const vtn_result* result) {
    return result ? result->csv.c_str() : nullptr;
}

void vtn_result_free(vtn_result* result) { delete result; }

const char* vtn_last_error(void) { return g_last_error.empty() ? nullptr : g_last_error.c_str(); }

const char* vtn_version(void) { return "0.1.0"; }

}  // extern "C"
