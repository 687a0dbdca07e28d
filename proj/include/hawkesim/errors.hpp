#pragma once

#include <stdexcept>
#include <string>

namespace hawkesim {

// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Transition matrix is reducible or periodic where ergodicity is required.
struct NonErgodicChain : Error {
  using Error::Error;
};

// A linear solve failed (singular system or residual above tolerance).
struct SolveFailure : Error {
  using Error::Error;
};

// State label outside 1..n.
struct InvalidState : Error {
  using Error::Error;
};

// Two-state closed form evaluated at a degenerate corner (p = p' = 1).
struct DegenerateChain : Error {
  using Error::Error;
};

// A scaling by sigma_bar was requested but sigma_bar = 0.
struct SigmaBarZero : Error {
  using Error::Error;
};

// Claim volatility is zero, so the exponential-utility exponent is undefined.
struct ZeroVolatility : Error {
  using Error::Error;
};

// Config file cannot be parsed or fails validation; message names the field.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace hawkesim
