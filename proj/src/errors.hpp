#pragma once

#include <stdexcept>
#include <string>

namespace vtn {

// Error taxonomy mirrored by the C API status codes and the CLI exit codes.
enum class ErrorCode : int {
    Ok = 0,
    Validation = 1,
    Incompatible = 2,
    Identity = 3,
    Limit = 4,
    Internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorCode::Validation, what) {}
};

// Compatibility condition violated: carries the measured defect so callers
// can report it.
class IncompatibleError : public Error {
public:
    IncompatibleError(const std::string& what, double defect)
        : Error(ErrorCode::Incompatible, what), defect_(defect) {}
    double defect() const noexcept { return defect_; }

private:
    double defect_;
};

class LimitError : public Error {
public:
    explicit LimitError(const std::string& what) : Error(ErrorCode::Limit, what) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

}  // namespace vtn
