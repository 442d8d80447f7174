// Chirp-periodic prefix handling.
#pragma once

#include "afdm/params.hpp"
#include "afdm/types.hpp"

namespace afdm {

// Prefix sample k (k = 0..L-1) copies body sample k+N-L with the chirp
// continuation factor e^{-j 2 pi c1 (N^2 + 2 N (k - L))}. When 2 N c1 is
// an integer the factor is 1 and the prefix reduces to a cyclic prefix.
cvec append_cpp(const cvec& body, const AfdmParams& p);

// Drops the first L samples of an N+L frame.
cvec strip_cpp(const cvec& frame, const AfdmParams& p);

}  // namespace afdm
