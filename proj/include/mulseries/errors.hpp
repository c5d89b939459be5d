#pragma once

#include <stdexcept>
#include <string>

namespace mulseries {

/// Base of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MULSERIES_ERROR(Name)                                      \
  class Name : public error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : error(#Name ": " + what) {} \
  }

/// A maximal contact sequence violates its invariants or has no realizing chain.
MULSERIES_ERROR(InvalidContactSequence);
/// Proximity data does not describe a simple blowup chain.
MULSERIES_ERROR(InconsistentProximity);
/// A computation on a model diverged (e.g. the unloading guard fired).
MULSERIES_ERROR(InconsistentModel);
MULSERIES_ERROR(NegativeMultiplicity);
MULSERIES_ERROR(NotNested);
MULSERIES_ERROR(NotMember);
/// A checked identity between two independent computations failed.
MULSERIES_ERROR(TheoremViolation);
MULSERIES_ERROR(UnknownFormat);
MULSERIES_ERROR(InvalidInput);

#undef MULSERIES_ERROR

}  // namespace mulseries
