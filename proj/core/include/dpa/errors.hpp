#pragma once

#include <stdexcept>
#include <string>

namespace dpa {

/// Raised for malformed model files: syntax errors carry line/column,
/// semantic errors carry the offending model path (e.g. "processes[1].steps[0]").
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a structurally valid model cannot be analyzed
/// (scheduler deadlock, resource violation, unsupported query).
class AnalysisError : public std::runtime_error {
public:
    explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

/// Contract violations inside the geometric/symbolic layer: unknown
/// variables in constraints, integration of an unbounded variable,
/// invalid density supports.
class GeometryError : public std::logic_error {
public:
    explicit GeometryError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dpa
