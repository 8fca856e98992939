#pragma once

#include <stdexcept>
#include <string>

namespace portopt {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- instance parsing ---
struct MalformedFile : Error { using Error::Error; };
struct InconsistentCount : Error { using Error::Error; };
struct CorrelationOutOfRange : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// --- portfolio / feasibility ---
struct InfeasibleBounds : Error { using Error::Error; };
struct NonPositiveWeight : Error { using Error::Error; };

// --- moves ---
struct AssetNotInPortfolio : Error { using Error::Error; };
struct AssetAlreadyInPortfolio : Error { using Error::Error; };
struct NoReplacementAvailable : Error { using Error::Error; };
struct EmptyNeighborhood : Error { using Error::Error; };

// --- frontier / QP ---
struct Infeasible : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };
struct EmptyFrontier : Error { using Error::Error; };

// --- I/O ---
struct IoError : Error { using Error::Error; };
struct SchemaMismatch : Error { using Error::Error; };

}  // namespace portopt
