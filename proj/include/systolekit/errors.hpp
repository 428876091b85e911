#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace systolekit {

/// Domain error carrying a stable machine-readable code ("BranchingViolation",
/// "MetricInfeasible", ...). The CLI surfaces the code verbatim in its error
/// object; tests match on it.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& detail) {
    throw Error(std::move(code), detail);
}

} // namespace systolekit
