// Transform-domain effective channel and linear MMSE detection.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "afdm/channel.hpp"
#include "afdm/params.hpp"
#include "afdm/transform.hpp"
#include "afdm/types.hpp"

namespace afdm {

// Effective transform-domain matrix H = F T F^H, where T is the
// circular time-domain channel of one prefixed frame after the prefix is
// stripped: row n picks input (n - l_i) mod N with the path's Doppler
// phase continued from the frame start (the body begins L samples in) and
// the prefix's chirp continuation on the wrapped taps.
Eigen::MatrixXcd effective_channel(const ChannelRealization& ch,
                                   const AfdmParams& p);

// x^ = H^H (H H^H + sigma_n2 I)^{-1} y. A singular zero-noise Gram matrix
// falls back to a machine-epsilon ridge; `regularized` reports it.
class MmseDetector {
 public:
  MmseDetector(const Eigen::MatrixXcd& h, double sigma_n2);
  cvec detect(const cvec& y) const;
  bool regularized() const { return regularized_; }

 private:
  Eigen::MatrixXcd h_;
  Eigen::LLT<Eigen::MatrixXcd> llt_;
  bool regularized_ = false;
};

cvec mmse_detect(const cvec& y, const Eigen::MatrixXcd& h, double sigma_n2);

// Same detector factored through the transform: with H = F T F^H the
// Gram solve reduces to the sparse banded system (T T^H + sigma_n2 I),
// so one detection costs two transform applications plus a sparse solve.
// Matches MmseDetector on effective_channel(ch, p) to solver precision.
class ChannelMmse {
 public:
  ChannelMmse(const ChannelRealization& ch, const AfdmParams& p,
              double sigma_n2, const DaftTransform& plan);
  cvec detect(const cvec& y) const;
  bool regularized() const { return regularized_; }

 private:
  const DaftTransform* plan_;
  Eigen::SparseMatrix<cdbl> t_adj_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<cdbl>> solver_;
  bool regularized_ = false;
};

}  // namespace afdm
