#pragma once

#include <stdexcept>
#include <string>

namespace qospath {

// Malformed input text (topology or experiment config files).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally well-formed input that violates a model invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// No admissible solution exists for the requested flow
// (disconnected admissible subgraph, empty feasible set, degenerate population).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qospath
