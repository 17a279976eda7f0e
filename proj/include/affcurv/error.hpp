#pragma once

#include <stdexcept>
#include <string>

namespace affcurv {

// Failure classes map onto CLI exit codes (see exit_code in cli.hpp).
enum class ErrorKind {
    input,       // malformed arguments, dimension mismatch, unknown names
    domain,      // parameter point outside a chart
    degenerate,  // immersion / transversality / orientation degeneracy
    pathology,   // numerical pathology (e.g. excessive non-Morse rejections)
    verdict      // a certified biconditional disagreed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct InputError : Error {
    explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

struct DegeneracyError : Error {
    explicit DegeneracyError(const std::string& what) : Error(ErrorKind::degenerate, what) {}
};

struct PathologyError : Error {
    explicit PathologyError(const std::string& what) : Error(ErrorKind::pathology, what) {}
};

struct VerdictError : Error {
    explicit VerdictError(const std::string& what) : Error(ErrorKind::verdict, what) {}
};

}  // namespace affcurv
