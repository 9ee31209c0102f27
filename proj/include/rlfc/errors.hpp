#pragma once

#include <stdexcept>
#include <string>

namespace rlfc {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector/matrix/payload lengths that do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Decoder asked for packets before reaching full rank.
class InsufficientRank : public Error {
 public:
  using Error::Error;
};

/// Receiver already holds a full basis, nothing innovative can be built.
class NothingToSend : public Error {
 public:
  using Error::Error;
};

/// Invalid model or channel configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed codeword or trace bytes.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace rlfc
