#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torstab {

// Library error taxonomy. The numeric values are part of the C ABI
// (see torstab.h) and must not be reordered.
enum class ErrorCode : int {
  kOk = 0,
  kZeroCharge = 1,
  kDomainError = 2,
  kUnsupportedSpectrum = 3,
  kNotInHeart = 4,
  kInvalidTorsionPair = 5,
  kInconsistentMorphism = 6,
  kMissingHNData = 7,
  kNotNumericallyConsistent = 8,
  kNotInU = 9,
  kOnSpectrum = 10,
  kNeverEscapes = 11,
  kDisconnected = 12,
  kInvalidExtension = 13,
  kParseError = 14,
  kUndeterminedHN = 15,
  kInternal = 99,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace torstab
