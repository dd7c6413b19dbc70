#pragma once

#include <stdexcept>
#include <string>

namespace liepke {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched dimensions or moduli, or parameters violating their invariants.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

/// Bit string of the wrong length handed to a hash or scheme operation.
class EncodingError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Private key not bound to the public key it is used with.
class KeyError : public Error {
 public:
  using Error::Error;
};

/// An attack whose search space exceeds the configured budget.
class BudgetRefused : public Error {
 public:
  using Error::Error;
};

}  // namespace liepke
