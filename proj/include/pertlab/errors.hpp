#pragma once

#include <stdexcept>
#include <string>

namespace pertlab {

// A computation would exceed a configured budget (table capacity, term count).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// An instance violates the regime of the bound or inequality it was checked against.
struct RejectedInstance : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Inputs whose shapes do not fit together (tabulation mismatch, block sizes).
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exponent expressions outside the supported affine-in-one-parameter form.
struct UnsupportedStructure : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Least-squares fit with too few usable points.
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pertlab
