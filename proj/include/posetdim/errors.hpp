#pragma once

#include <stdexcept>
#include <string>

namespace posetdim {

/// Base of every exception thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The arc digraph (or a poset plus reversed pairs) contains a directed cycle.
struct CycleError : Error { using Error::Error; };
/// A pair handed in as incomparable is comparable.
struct MembershipError : Error { using Error::Error; };
/// A coloring leaves some incomparable pair uncolored.
struct TotalityError : Error { using Error::Error; };
/// Argument outside the supported domain (sizes, parameters).
struct DomainError : Error { using Error::Error; };
/// The exact solver hit its color cap or node budget.
struct BudgetExceeded : Error { using Error::Error; };
/// A proven invariant failed to hold; always a bug.
struct InternalError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
/// A produced coloring failed independent re-verification.
struct ValidityError : Error { using Error::Error; };
struct CoverageError : Error { using Error::Error; };
struct ConnectivityError : Error { using Error::Error; };
/// Malformed input file.
struct FormatError : Error { using Error::Error; };

}  // namespace posetdim
