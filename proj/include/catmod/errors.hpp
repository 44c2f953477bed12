#pragma once

#include <stdexcept>
#include <string>

namespace catmod {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define CATMOD_DEFINE_ERROR(Name)                               \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

CATMOD_DEFINE_ERROR(FieldMismatch);
CATMOD_DEFINE_ERROR(ShapeError);
CATMOD_DEFINE_ERROR(SingularMatrix);
CATMOD_DEFINE_ERROR(DivisionByZero);
CATMOD_DEFINE_ERROR(NotAGroup);
CATMOD_DEFINE_ERROR(InvalidAlgebra);
CATMOD_DEFINE_ERROR(InvalidModule);
CATMOD_DEFINE_ERROR(InvalidHopf);
CATMOD_DEFINE_ERROR(AlgebraMismatch);
CATMOD_DEFINE_ERROR(NotIdempotent);
CATMOD_DEFINE_ERROR(FullnessFailure);
CATMOD_DEFINE_ERROR(MalformedConstraint);
CATMOD_DEFINE_ERROR(CompositionMismatch);
CATMOD_DEFINE_ERROR(DegenerateEquivalence);
CATMOD_DEFINE_ERROR(StageIncompatible);
CATMOD_DEFINE_ERROR(ParseError);

#undef CATMOD_DEFINE_ERROR

}  // namespace catmod
