#pragma once

#include <stdexcept>
#include <string>

namespace psusy {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PSUSY_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

PSUSY_DEFINE_ERROR(PoleError);              // Gamma evaluated at 0, -1, -2, ...
PSUSY_DEFINE_ERROR(DomainError);            // complex power of zero, etc.
PSUSY_DEFINE_ERROR(ArgumentError);          // violated preconditions
PSUSY_DEFINE_ERROR(RangeError);             // level index outside the bound range
PSUSY_DEFINE_ERROR(NotAvailable);           // no closed form for this model
PSUSY_DEFINE_ERROR(DerivativeUnavailable);  // sampled model without derivative policy
PSUSY_DEFINE_ERROR(ConvergenceError);       // QR iteration budget exhausted
PSUSY_DEFINE_ERROR(DivergentMap);           // |E + m| too small in the spinor map

#undef PSUSY_DEFINE_ERROR

}  // namespace psusy
