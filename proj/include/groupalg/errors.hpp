#pragma once

#include <stdexcept>
#include <string>

namespace groupalg {

// Every failure mode is a typed exception; kind() is stable and machine-readable,
// the message names the offending witness (element, triple, axiom, bound).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define GROUPALG_ERROR(Name)                                          \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}      \
  }

GROUPALG_ERROR(MalformedTable);
GROUPALG_ERROR(NotAssociative);
GROUPALG_ERROR(NoIdentity);
GROUPALG_ERROR(NoInverse);
GROUPALG_ERROR(UnknownName);
GROUPALG_ERROR(BadParams);
GROUPALG_ERROR(OrderOverflow);
GROUPALG_ERROR(BoundExceeded);
GROUPALG_ERROR(SearchBudgetExceeded);
GROUPALG_ERROR(NotPrime);
GROUPALG_ERROR(RingAxiomViolation);
GROUPALG_ERROR(RingMismatch);
GROUPALG_ERROR(NotUnital);
GROUPALG_ERROR(PreconditionViolated);
GROUPALG_ERROR(EmptyPositivePart);
GROUPALG_ERROR(ConstructionFailed);
GROUPALG_ERROR(UnsupportedClass);
GROUPALG_ERROR(InternalError);

#undef GROUPALG_ERROR

}  // namespace groupalg
