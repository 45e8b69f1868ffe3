#pragma once
#include <stdexcept>
#include <string>
#include <utility>

namespace ccalc {

// Every failure carries a stable machine-readable code plus a human detail.
// Codes double as CLI diagnostics; see README for the full list.
struct CalcError : std::runtime_error {
    std::string code;
    CalcError(std::string c, const std::string& detail)
        : std::runtime_error(c + ": " + detail), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& detail) {
    throw CalcError(code, detail);
}

} // namespace ccalc
