#pragma once

#include <stdexcept>
#include <string>

namespace ddr {

// Thrown when an exact dressed-state computation cannot assign labels
// because two eigenvalues coincide.
class DegenerateSpectrum : public std::runtime_error {
public:
    explicit DegenerateSpectrum(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a perturbative expression is evaluated outside its
// domain of validity.
class ValidityViolated : public std::runtime_error {
public:
    explicit ValidityViolated(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by equivalent_scheme when the requested basis change needs a
// detuning configuration the caller did not provide.
class UnsupportedDetuning : public std::runtime_error {
public:
    explicit UnsupportedDetuning(const std::string& msg) : std::runtime_error(msg) {}
};

// Steady-state solver found more than one stationary solution.
class NonUniqueSteadyState : public std::runtime_error {
public:
    explicit NonUniqueSteadyState(const std::string& msg) : std::runtime_error(msg) {}
};

// Steady-state solver could not produce a valid density matrix.
class SingularSystem : public std::runtime_error {
public:
    explicit SingularSystem(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive integrator could not make progress at the requested tolerance.
class StepSizeUnderflow : public std::runtime_error {
public:
    explicit StepSizeUnderflow(const std::string& msg) : std::runtime_error(msg) {}
};

// A closed-form expression was requested outside the parameter regime
// in which it applies.
class OutsideRegime : public std::runtime_error {
public:
    explicit OutsideRegime(const std::string& msg) : std::runtime_error(msg) {}
};

// Root bracketing failed: the objective has the same sign at both ends.
class NoSignChange : public std::runtime_error {
public:
    explicit NoSignChange(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration file or command-line usage.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ddr
