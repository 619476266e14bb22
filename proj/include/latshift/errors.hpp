#pragma once

#include <stdexcept>
#include <string>

namespace latshift {

/// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// lattice
struct NotSymmetric : Error { using Error::Error; };
struct NotEven : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct UnknownName : Error { using Error::Error; };
struct BadParameter : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NegativeBound : Error { using Error::Error; };

// qseries
struct BeyondOrder : Error { using Error::Error; };

// voashift
struct ComplexShiftUnsupported : Error { using Error::Error; };
struct NotInDualLattice : Error { using Error::Error; };
struct NotVOACase : Error { using Error::Error; };
struct NotMultipleOf8 : Error { using Error::Error; };
struct CentralChargeTooNegative : Error { using Error::Error; };

// fock
struct TruncationTooSmall : Error { using Error::Error; };
struct NonIntegralExponent : Error { using Error::Error; };

}  // namespace latshift
