#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace h2net {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown node or edge id.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Argument outside its mathematical domain (e.g. a composition outside [0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input that is structurally unusable for the requested operation.
class InvalidNetworkError : public Error {
public:
    using Error::Error;
};

/// Directed graph handed to topological sorting contains a cycle.
class NotAcyclicError : public Error {
public:
    NotAcyclicError() : Error("graph not acyclic") {}
};

/// The tree solver was given a network with cycles.
class NotATreeError : public Error {
public:
    using Error::Error;
};

/// The mixing equation has a zero denominator at a node that still carries flow.
class CompositionUndefinedError : public Error {
public:
    CompositionUndefinedError(const std::string& node_id)
        : Error("composition undefined at node '" + node_id + "' (no inflow and no supply)"),
          node(node_id) {}

    std::string node;
};

/// A squared pressure became nonpositive: some pipe is longer than its critical length.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, std::string edge_id = {},
                    double length = std::numeric_limits<double>::quiet_NaN(),
                    double critical = std::numeric_limits<double>::quiet_NaN())
        : Error(what), edge(std::move(edge_id)), edge_length(length), critical_length(critical) {}

    std::string edge;
    double edge_length;
    double critical_length;
};

/// Lambda outside the bracket [gamma_min, gamma_max].
class OutOfBracketError : public Error {
public:
    using Error::Error;
};

/// An iterative method stopped before reaching its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_residual, int iterations)
        : Error(what), residual(best_residual), iterations_used(iterations) {}

    double residual;
    int iterations_used;
};

}  // namespace h2net
