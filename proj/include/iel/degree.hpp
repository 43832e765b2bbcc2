#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

#include "iel/term.hpp"

namespace iel {

using BigInt = boost::multiprecision::cpp_int;

struct DegreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeReport {
  BigInt bar;   // |t|, strictly decreasing along permutation steps
  BigInt hash;  // #t, invariant along permutation steps
};

// Both norms in a single pass. Defined on bottom/top-free terms only;
// Efq or Unit nodes raise DegreeError. Values grow multiplicatively with
// box nesting, hence the arbitrary-precision integers.
DegreeReport degree(const TermPtr& t);
BigInt bar_norm(const TermPtr& t);
BigInt hash_norm(const TermPtr& t);

}  // namespace iel
