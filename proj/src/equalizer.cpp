#include "afdm/equalizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace afdm {

namespace {

// Nonzeros of the time-domain matrix T for one frame: row m, column
// (m - l_i) mod N. The Doppler phase runs from the frame start, so the
// body sample at row m sits m + L samples in; taps that wrap through the
// stripped prefix carry its chirp continuation factor.
std::vector<Eigen::Triplet<cdbl>> time_channel_triplets(
    const ChannelRealization& ch, const AfdmParams& p) {
  validate(p);
  if (ch.paths.empty())
    throw std::invalid_argument("effective channel: realization has no paths");
  if (ch.max_delay() > p.cpp_len)
    throw std::invalid_argument("effective channel: path delay exceeds prefix length");

  const int n = p.n;
  std::vector<Eigen::Triplet<cdbl>> trip;
  trip.reserve(ch.paths.size() * n);
  for (const PathTap& t : ch.paths) {
    for (int m = 0; m < n; ++m) {
      const int col = (m - t.delay + n) % n;
      cdbl v = t.gain * cis_cycles(-t.doppler * (m + p.cpp_len) / n);
      if (m < t.delay) {
        v *= cis_cycles(-p.c1 * (static_cast<double>(n) * n +
                                 2.0 * n * (m - t.delay)));
      }
      trip.emplace_back(m, col, v);
    }
  }
  return trip;
}

double ridge_for(const Eigen::VectorXd& diag) {
  const double scale = diag.size() ? diag.maxCoeff() : 1.0;
  return std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
}

}  // namespace

Eigen::MatrixXcd effective_channel(const ChannelRealization& ch,
                                   const AfdmParams& p) {
  const auto trip = time_channel_triplets(ch, p);
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(p.n, p.n);
  for (const auto& e : trip) t(e.row(), e.col()) += e.value();
  const DaftTransform plan(p);
  return plan.matrix() * t * plan.matrix().adjoint();
}

MmseDetector::MmseDetector(const Eigen::MatrixXcd& h, double sigma_n2) : h_(h) {
  if (h.rows() != h.cols() || h.rows() < 1)
    throw std::invalid_argument("MmseDetector: H must be square");
  if (sigma_n2 < 0.0)
    throw std::invalid_argument("MmseDetector: noise variance must be >= 0");
  Eigen::MatrixXcd gram = h_ * h_.adjoint();
  gram.diagonal().array() += sigma_n2;
  llt_.compute(gram);
  if (llt_.info() != Eigen::Success) {
    gram.diagonal().array() += ridge_for(gram.diagonal().real());
    regularized_ = true;
    llt_.compute(gram);
    if (llt_.info() != Eigen::Success)
      throw std::runtime_error("MmseDetector: Gram factorization failed");
  }
}

cvec MmseDetector::detect(const cvec& y) const {
  if (static_cast<Eigen::Index>(y.size()) != h_.rows())
    throw std::invalid_argument("MmseDetector::detect: length mismatch");
  Eigen::Map<const Eigen::VectorXcd> yv(y.data(), y.size());
  Eigen::VectorXcd x = h_.adjoint() * llt_.solve(yv);
  return {x.data(), x.data() + x.size()};
}

cvec mmse_detect(const cvec& y, const Eigen::MatrixXcd& h, double sigma_n2) {
  return MmseDetector(h, sigma_n2).detect(y);
}

ChannelMmse::ChannelMmse(const ChannelRealization& ch, const AfdmParams& p,
                         double sigma_n2, const DaftTransform& plan)
    : plan_(&plan) {
  if (plan.size() != p.n)
    throw std::invalid_argument("ChannelMmse: transform size mismatch");
  if (sigma_n2 < 0.0)
    throw std::invalid_argument("ChannelMmse: noise variance must be >= 0");

  const auto trip = time_channel_triplets(ch, p);
  Eigen::SparseMatrix<cdbl> t(p.n, p.n);
  t.setFromTriplets(trip.begin(), trip.end());
  t_adj_ = t.adjoint();

  Eigen::SparseMatrix<cdbl> gram = (t * t_adj_).pruned();
  Eigen::SparseMatrix<cdbl> eye(p.n, p.n);
  eye.setIdentity();
  const double base = sigma_n2;
  gram += cdbl(base, 0.0) * eye;
  solver_.compute(gram);
  if (solver_.info() != Eigen::Success) {
    Eigen::VectorXd d = gram.diagonal().real();
    gram += cdbl(ridge_for(d), 0.0) * eye;
    regularized_ = true;
    solver_.compute(gram);
    if (solver_.info() != Eigen::Success)
      throw std::runtime_error("ChannelMmse: Gram factorization failed");
  }
}

cvec ChannelMmse::detect(const cvec& y) const {
  // x^ = F T^H (T T^H + s I)^{-1} F^H y, using F^H F = I.
  cvec z = plan_->inverse(y);
  Eigen::Map<const Eigen::VectorXcd> zv(z.data(), z.size());
  Eigen::VectorXcd w = solver_.solve(zv);
  Eigen::VectorXcd v = t_adj_ * w;
  cvec vt(v.data(), v.data() + v.size());
  return plan_->forward(vt);
}

}  // namespace afdm
