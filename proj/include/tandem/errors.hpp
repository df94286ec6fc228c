#pragma once

#include <stdexcept>
#include <string>

namespace tandem {

/// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (dimension mismatch, bad range, ...).
struct ContractError : Error {
  using Error::Error;
};

/// Invalid configuration value; the message names the offending key.
struct ConfigError : Error {
  using Error::Error;
};

/// Non-finite value appeared during a numeric computation.
struct NumericError : Error {
  using Error::Error;
};

/// Seed selection could not satisfy the pairwise-distance threshold.
struct SeedingError : Error {
  using Error::Error;
};

/// Exact-search routine asked to handle more clusters than supported.
struct UnsupportedSizeError : Error {
  using Error::Error;
};

/// Malformed input file; the message carries the line number.
struct ParseError : Error {
  using Error::Error;
};

/// Structurally wrong input (width mismatch, empty file, mixed label rows).
struct SchemaError : Error {
  using Error::Error;
};

/// Synthetic corpus parameters cannot be realized.
struct GenerationError : Error {
  using Error::Error;
};

/// A train/test stratum is too small to split.
struct StratifyError : Error {
  using Error::Error;
};

/// Evaluation asked of data that cannot support it (e.g. missing labels).
struct EvalError : Error {
  using Error::Error;
};

}  // namespace tandem
