// Discrete affine Fourier transform pair.
#pragma once

#include <Eigen/Dense>

#include "afdm/params.hpp"
#include "afdm/types.hpp"

namespace afdm {

// Dense DAFT operator with entries
//   F[m^, n] = (1/sqrt(N)) e^{-j 2 pi (c1 n^2 + c2 m^^2 + n m^ / N)}.
// F is unitary (diagonal chirp * DFT * diagonal chirp), so the inverse
// transform is F^H. Construction is O(N^2); applications are dense
// matrix-vector products, which is plenty at the block sizes used here.
class DaftTransform {
 public:
  explicit DaftTransform(const AfdmParams& p);

  // Time samples -> transform-domain symbols.
  cvec forward(const cvec& time) const;
  // Transform-domain symbols -> time samples.
  cvec inverse(const cvec& symbols) const;

  const Eigen::MatrixXcd& matrix() const { return fwd_; }
  int size() const { return n_; }

 private:
  int n_;
  Eigen::MatrixXcd fwd_;
};

// One-shot conveniences; build the operator when applying it repeatedly.
cvec daft(const cvec& time, const AfdmParams& p);
cvec idaft(const cvec& symbols, const AfdmParams& p);

}  // namespace afdm
