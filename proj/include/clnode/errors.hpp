#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace clnode {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotInvertible : Error { using Error::Error; };
struct NonConvergent : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct ModeMismatch : Error { using Error::Error; };
struct TruncationTooLow : Error { using Error::Error; };
struct MalformedPieces : Error { using Error::Error; };
struct UnsupportedField : Error { using Error::Error; };
struct UnsupportedPresentation : Error { using Error::Error; };
struct MissingCount : Error { using Error::Error; };
struct UnknownPreset : Error { using Error::Error; };
struct PrecisionExhausted : Error { using Error::Error; };
// A census stopped early on request after writing its checkpoint.
struct Interrupted : Error { using Error::Error; };

// Raised when a t-adic evaluation finds a coefficient below the asserted
// valuation bound.
struct ValuationGuardFailed : Error {
  ValuationGuardFailed(int n, int valuation, int bound)
      : Error("valuation guard failed at n=" + std::to_string(n) + ": val_t=" +
              std::to_string(valuation) + " < bound " + std::to_string(bound)),
        n(n), valuation(valuation), bound(bound) {}
  int n;
  int valuation;
  int bound;
};

// Raised by censuses whose up-front iteration estimate exceeds the budget.
struct TooLarge : Error {
  TooLarge(const std::string& what, double estimate, double budget)
      : Error(what + ": estimated " + std::to_string(estimate) +
              " iterations exceeds budget " + std::to_string(budget)),
        estimate(estimate), budget(budget) {}
  double estimate;
  double budget;
};

}  // namespace clnode
