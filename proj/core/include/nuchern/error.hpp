#pragma once

#include <stdexcept>
#include <string>

namespace nuchern {

/* Every failure mode in the library is reported through Error with a stable
   code, so tests can assert on the precise condition. */
enum class Err {
  DuplicateName,
  RegistryMismatch,
  NonInvertibleBody,
  UndefinedNu,
  ParityMismatch,
  PoleAtPoint,
  BranchCut,
  ZeroBody,
  DimensionMismatch,
  NonInvertibleBlock,
  IndexOutOfRange,
  UnresolvableNu,
  BadDimensions,
  BadCount,
  TruncationOverflow,
  BadConfig,
  ParseError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::DuplicateName: return "DuplicateName";
    case Err::RegistryMismatch: return "RegistryMismatch";
    case Err::NonInvertibleBody: return "NonInvertibleBody";
    case Err::UndefinedNu: return "UndefinedNu";
    case Err::ParityMismatch: return "ParityMismatch";
    case Err::PoleAtPoint: return "PoleAtPoint";
    case Err::BranchCut: return "BranchCut";
    case Err::ZeroBody: return "ZeroBody";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NonInvertibleBlock: return "NonInvertibleBlock";
    case Err::IndexOutOfRange: return "IndexOutOfRange";
    case Err::UnresolvableNu: return "UnresolvableNu";
    case Err::BadDimensions: return "BadDimensions";
    case Err::BadCount: return "BadCount";
    case Err::TruncationOverflow: return "TruncationOverflow";
    case Err::BadConfig: return "BadConfig";
    case Err::ParseError: return "ParseError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace nuchern
