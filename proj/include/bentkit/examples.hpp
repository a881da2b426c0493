#pragma once

// Bent functions whose translation designs are isomorphic although the
// functions are not EA-equivalent.

#include "bentkit/boolean_function.hpp"

namespace bentkit {

struct BentPair {
  BooleanFunction f;
  BooleanFunction f_prime;
};

// f = x1x2 + x3x4 + x5x6 and f' = f + x1x3x5 on F_2^6.
BentPair quadratic_cubic_pair();

// The pair above plus x7x8 + x9x10 + ... + x(n-1)xn on both sides; n even, 6 <= n <= 12.
BentPair direct_sum_pair(int n);

// Two Maiorana-McFarland functions on F_2^10 with the permutations pi,
// sigma satisfying f(pi(x) ^ sigma(y)) = f'(x ^ y).
struct TranslationWitness {
  BooleanFunction f;
  BooleanFunction f_prime;
  VectorialFunction pi;
  VectorialFunction sigma;
};

TranslationWitness degree_five_witness();

}  // namespace bentkit
