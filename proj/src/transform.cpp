#include "afdm/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace afdm {

namespace {

Eigen::Map<const Eigen::VectorXcd> as_vec(const cvec& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

cvec to_cvec(const Eigen::VectorXcd& v) {
  return {v.data(), v.data() + v.size()};
}

void check_len(const cvec& v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(n) + ", got " +
                                std::to_string(v.size()));
}

}  // namespace

DaftTransform::DaftTransform(const AfdmParams& p) : n_(p.n) {
  validate(p);
  const int n = p.n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  fwd_.resize(n, n);
  for (int mh = 0; mh < n; ++mh) {
    const double m2 = p.c2 * static_cast<double>(mh) * mh;
    for (int t = 0; t < n; ++t) {
      // n*m^ mod N stays exact in double for any block size used here.
      const double cyc = p.c1 * static_cast<double>(t) * t + m2 +
                         static_cast<double>((static_cast<long long>(t) * mh) % n) / n;
      fwd_(mh, t) = scale * cis_cycles(-cyc);
    }
  }
}

cvec DaftTransform::forward(const cvec& time) const {
  check_len(time, n_, "DaftTransform::forward");
  return to_cvec(fwd_ * as_vec(time));
}

cvec DaftTransform::inverse(const cvec& symbols) const {
  check_len(symbols, n_, "DaftTransform::inverse");
  return to_cvec(fwd_.adjoint() * as_vec(symbols));
}

cvec daft(const cvec& time, const AfdmParams& p) {
  return DaftTransform(p).forward(time);
}

cvec idaft(const cvec& symbols, const AfdmParams& p) {
  return DaftTransform(p).inverse(symbols);
}

}  // namespace afdm
