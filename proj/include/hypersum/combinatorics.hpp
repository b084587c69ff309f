#pragma once

#include "hypersum/rational.hpp"
#include "hypersum/series.hpp"

namespace hypersum {

/// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
Rational pochhammer(const Rational& a, unsigned n);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// Stirling number of the second kind S(j, k). Rows are memoized per process
/// behind a mutex.
Integer stirling2(unsigned j, unsigned k);

/// Bernoulli number B_n with B_1 = -1/2. Memoized like stirling2.
Rational bernoulli(unsigned n);

/// Physicists' Hermite polynomial H_k evaluated at a rational point or at a
/// truncated series (H_0 = 1, H_1 = 2x, H_{k+1} = 2x H_k - 2k H_{k-1}).
Rational hermite(unsigned k, const Rational& at);
TruncatedSeries hermite(unsigned k, const TruncatedSeries& at);

}  // namespace hypersum
