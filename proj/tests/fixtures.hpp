#pragma once

#include <mulseries/mulseries.hpp>

#include <initializer_list>

namespace fixtures {

inline mulseries::IntVector ints(std::initializer_list<long> xs) {
  mulseries::IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline mulseries::ResolutionModel model(std::initializer_list<long> contact) {
  return mulseries::model_from_contact(mulseries::MaximalContactSequence(ints(contact)));
}

inline mulseries::Rational q(long num, long den = 1) { return mulseries::Rational(num, den); }

}  // namespace fixtures
