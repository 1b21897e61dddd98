#pragma once

#include <stdexcept>
#include <string>

namespace krf {

/// Base class for all library errors. `stage` is filled in by the
/// orchestrator so a failing pipeline reports which phase died.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonPositiveMetric : Error {
    explicit NonPositiveMetric(const std::string& msg) : Error(msg) {}
};

struct UnsupportedDimension : Error {
    explicit UnsupportedDimension(const std::string& msg) : Error(msg) {}
};

struct NotReflexive : Error {
    explicit NotReflexive(const std::string& msg) : Error(msg) {}
};

struct UnboundedRicciPotential : Error {
    explicit UnboundedRicciPotential(const std::string& msg) : Error(msg) {}
};

struct DegenerateHessian : Error {
    explicit DegenerateHessian(const std::string& msg) : Error(msg) {}
};

struct StepCollapse : Error {
    explicit StepCollapse(const std::string& msg) : Error(msg) {}
};

struct TailNotConverged : Error {
    explicit TailNotConverged(const std::string& msg) : Error(msg) {}
};

struct EigSolverFailure : Error {
    explicit EigSolverFailure(const std::string& msg) : Error(msg) {}
};

struct NoCauchySubfamily : Error {
    explicit NoCauchySubfamily(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    ConfigError(const std::string& field_path, int line, const std::string& msg)
        : Error("config: " + field_path + (line > 0 ? " (line " + std::to_string(line) + ")" : "") +
                ": " + msg),
          field(field_path), line_no(line) {}
    std::string field;
    int line_no;
};

struct IoError : Error {
    IoError(const std::string& path, const std::string& msg)
        : Error("io: " + path + ": " + msg), path(path) {}
    std::string path;
};

} // namespace krf
