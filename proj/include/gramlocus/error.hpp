#pragma once

#include <stdexcept>
#include <string>

namespace gramlocus {

/// Bad input: wrong lengths, out-of-range slots, non-finite entries.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact integer arithmetic left the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A constructed certificate failed exact verification.
class CertificateError : public std::runtime_error {
 public:
  CertificateError(const std::string& what, std::string diff)
      : std::runtime_error(what), diff_(std::move(diff)) {}

  const std::string& diff() const noexcept { return diff_; }

 private:
  std::string diff_;
};

}  // namespace gramlocus
