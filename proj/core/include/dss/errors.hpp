#pragma once

#include <stdexcept>
#include <string>

namespace dss {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Construction / shape errors
struct DimensionMismatch : Error { using Error::Error; };
struct NonDiagonalE : Error { using Error::Error; };
struct DuplicateLabel : Error { using Error::Error; };
struct NonSquareIO : Error { using Error::Error; };
struct EmptyGrid : Error { using Error::Error; };
struct NonPositiveValue : Error { using Error::Error; };

// Numerical errors
struct SingularE : Error { using Error::Error; };
struct SingularAtS : Error { using Error::Error; };
struct IrregularPencil : Error { using Error::Error; };
struct HigherIndex : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };

// Modal analysis errors
struct DefectiveMode : Error { using Error::Error; };
struct VirtualModeRequested : Error { using Error::Error; };

// Netlist / file errors
struct ParseError : Error { using Error::Error; };
struct UnknownNode : Error { using Error::Error; };
struct UnknownBranchKind : Error { using Error::Error; };
struct FileNotFound : Error { using Error::Error; };

} // namespace dss
