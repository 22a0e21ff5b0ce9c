#pragma once

#include <stdexcept>
#include <string>

namespace pcrange {

// Argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation not defined for the given waveform variant.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Tabulated input too coarse or too narrow for the requested quantity.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or root finding failed to meet its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Physically or analytically infeasible scenario (delay prior narrower than
// the resolution, transmissivity >= 1, unreachable SNR).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pcrange
