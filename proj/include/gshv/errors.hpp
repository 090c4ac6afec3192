#pragma once

#include <stdexcept>
#include <string>

namespace gshv {

/// Structured error codes shared by every module. Validation failures carry
/// one of these plus a message naming the offending witness.
enum class Errc {
  // group axioms
  NotLatinSquare,
  NotAssociative,
  NoIdentity,
  NoInverse,
  IdOutOfRange,
  NotEquivariantAction,
  // site
  CycleDetected,
  GenericNotMinimal,
  DuplicatePoint,
  NotOpen,
  InertiaNotNormal,
  InertiaNotMonotone,
  InertiaGenericNotTrivial,
  // site maps
  NotMonotone,
  GenericNotPreserved,
  InertiaIncompatible,
  // sheaves
  NotEquivariant,
  PathIncoherent,
  UnknownPoint,
  NotNatural,
  SiteMismatch,
  TooLarge,
  // star calculus
  NotStar,
  NontrivialAction,
  UnknownComponent,
  LadderDisagreement,
  // io / generation
  ParseError,
  SchemaError,
  BoundsExceeded,
};

const char* errc_name(Errc c);

class ValidationError : public std::runtime_error {
 public:
  ValidationError(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
  throw ValidationError(code, detail);
}

}  // namespace gshv
