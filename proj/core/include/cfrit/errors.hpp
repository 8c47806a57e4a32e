#pragma once

#include <stdexcept>
#include <string>

namespace cfrit {

// Argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Search exhausted without a result (e.g. no safe prime of the requested size).
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value that cannot be represented by the quantizer (magnitude wrapped to 0 mod q).
class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decrypted / decoded data that no valid encoding could have produced.
class CorruptCiphertext : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tuning data whose gram matrix is singular or ill-posed.
class DegenerateData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfrit
