#pragma once

#include <stdexcept>
#include <string>

namespace chfact {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// special-function kernel
struct NonConvergence : Error { using Error::Error; };
struct InvalidB : Error { using Error::Error; };
struct BranchCutAmbiguity : Error { using Error::Error; };
struct PoleAtNonPositiveInteger : Error { using Error::Error; };
struct BetaUndefined : Error { using Error::Error; };

// ansatz / classification
struct DomainError : Error { using Error::Error; };
struct UnsupportedSystem : Error { using Error::Error; };
struct PoleAtNode : Error { using Error::Error; };

// verification
struct GridTooCoarse : Error { using Error::Error; };
struct AllPointsNearNodes : Error { using Error::Error; };
struct PoleTooClose : Error { using Error::Error; };
struct OracleUnavailable : Error { using Error::Error; };

}  // namespace chfact
