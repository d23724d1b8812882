#pragma once

#include <stdexcept>
#include <string>

namespace wstab {

/// Process exit codes shared by the CLI and the error hierarchy.
enum class ExitCode : int {
    ok = 0,
    parse = 1,
    verdict = 2,
    precondition = 3,
    internal = 4,
};

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ExitCode code() const noexcept { return code_; }

private:
    ExitCode code_;
};

/// Malformed input text (JSON, rationals, polynomials, weight lists).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ExitCode::parse, what) {}
};

/// An operation was called outside its contract: arity mismatch, point on a
/// wall, inadmissible weights, illegal move, no legal move for a vanishing quantity.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(ExitCode::precondition, what) {}
};

/// Something the theory guarantees did not happen (termination bound, a
/// final graph that is not stable, a quantity that went negative without a wall).
class InvariantError : public Error {
public:
    explicit InvariantError(const std::string& what) : Error(ExitCode::internal, what) {}
};

}  // namespace wstab
