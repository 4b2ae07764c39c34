#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace reclab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: malformed strings, violated preconditions, bad files.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NoElementsInWindow : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class TooFewElements : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidArity : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class MalformedCertificate : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class WindowTooSmall : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Checked 64-bit arithmetic left the representable range.
class Overflow : public Error {
 public:
  using Error::Error;
};

/// A threshold comparison could not be settled within the precision cap.
class UncertainAtPrecision : public Error {
 public:
  UncertainAtPrecision(const std::string& what, int bits,
                       std::vector<std::int64_t> ambiguous = {})
      : Error(what), bits_(bits), ambiguous_(std::move(ambiguous)) {}

  int bits() const noexcept { return bits_; }
  const std::vector<std::int64_t>& ambiguous() const noexcept { return ambiguous_; }

 private:
  int bits_;
  std::vector<std::int64_t> ambiguous_;
};

/// eta_dense_constant on an orbit that can never become eta-dense.
class NoSuchM : public Error {
 public:
  using Error::Error;
};

/// An exhaustive reference search ran past its node allowance.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace reclab
