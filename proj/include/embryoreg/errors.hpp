#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace embryoreg {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorCode : int {
    input = 2,      // bad input data, files, or preconditions
    numerical = 3,  // divergence, NaN/Inf, singular matrices
    check = 4,      // failed acceptance or gradient check
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string stage, const std::string& detail)
        : std::runtime_error(stage + ": " + detail),
          code_(code),
          stage_(std::move(stage)),
          detail_(detail) {}

    ErrorCode code() const { return code_; }
    const std::string& stage() const { return stage_; }
    const std::string& detail() const { return detail_; }

private:
    ErrorCode code_;
    std::string stage_;
    std::string detail_;
};

// Divergence during optimization keeps the loss trace for diagnosis.
class DivergenceError : public Error {
public:
    DivergenceError(std::string stage, const std::string& detail, std::vector<double> trace)
        : Error(ErrorCode::numerical, std::move(stage), detail), trace_(std::move(trace)) {}

    const std::vector<double>& trace() const { return trace_; }

private:
    std::vector<double> trace_;
};

[[noreturn]] inline void throw_input(const std::string& stage, const std::string& detail) {
    throw Error(ErrorCode::input, stage, detail);
}

[[noreturn]] inline void throw_numerical(const std::string& stage, const std::string& detail) {
    throw Error(ErrorCode::numerical, stage, detail);
}

}  // namespace embryoreg
