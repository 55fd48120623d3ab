#pragma once

#include <doctest.h>

#include "lipfree/error.hpp"
#include "lipfree/rational.hpp"

namespace testing {

inline lipfree::Rational q(const char* text) { return lipfree::parse_rational(text); }

// Runs f and returns the code of the lipfree::Error it throws.
template <class F>
lipfree::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const lipfree::Error& e) {
    return e.code();
  }
  FAIL("expected a lipfree::Error");
  return lipfree::ErrorCode::ParseError;
}

}  // namespace testing
