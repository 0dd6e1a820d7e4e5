#pragma once

#include <stdexcept>
#include <string>

namespace remimo {

/// Root of the library's exception hierarchy.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Configuration problems (bad keys, bad values, malformed config text).
/// CLI maps these to exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

struct ParseError : ConfigError {
  using ConfigError::ConfigError;
};

/// Carries the offending `section.key` path.
struct ValidationError : ConfigError {
  ValidationError(const std::string& key, const std::string& what)
      : ConfigError(key + ": " + what), key_path(key) {}
  std::string key_path;
};

/// Problems with ingested data files (spectra, mixtures).
/// CLI maps these to exit code 3.
struct DataError : Error {
  using Error::Error;
};

struct MalformedFile : DataError {
  using DataError::DataError;
};
struct NonMonotoneGrid : DataError {
  using DataError::DataError;
};
struct NegativeCoefficient : DataError {
  using DataError::DataError;
};
struct EmptyGrid : DataError {
  using DataError::DataError;
};
struct OutOfRange : DataError {
  using DataError::DataError;
};
struct UnknownSpecies : DataError {
  using DataError::DataError;
};

/// Violated numeric preconditions and runtime numeric failures.
/// CLI maps these to exit code 4.
struct NumericError : Error {
  using Error::Error;
};

struct InvalidInput : NumericError {
  using NumericError::NumericError;
};
struct NonPositiveInput : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NegativeAbsorption : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NonPositiveFrequency : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NonPositivePower : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NotPerfectSquare : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NonPositiveSpacing : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct OverlappingElements : InvalidInput {
  using InvalidInput::InvalidInput;
};
/// Requested a Rician decomposition of a channel with no scattered part (k = 0).
struct PureLoS : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct AllZeroGains : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NumericalFailure : NumericError {
  using NumericError::NumericError;
};

} // namespace remimo
