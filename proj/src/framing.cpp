#include "afdm/framing.hpp"

#include <stdexcept>
#include <string>

namespace afdm {

namespace {
void check_len(const cvec& v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(n) + ", got " +
                                std::to_string(v.size()));
}
}  // namespace

cvec append_cpp(const cvec& body, const AfdmParams& p) {
  validate(p);
  check_len(body, p.n, "append_cpp");
  const int n = p.n;
  const int l = p.cpp_len;
  cvec frame(n + l);
  for (int k = 0; k < l; ++k) {
    const double cyc = -p.c1 * (static_cast<double>(n) * n +
                                2.0 * n * (k - l));
    frame[k] = body[k + n - l] * cis_cycles(cyc);
  }
  for (int i = 0; i < n; ++i) frame[l + i] = body[i];
  return frame;
}

cvec strip_cpp(const cvec& frame, const AfdmParams& p) {
  validate(p);
  check_len(frame, p.frame_len(), "strip_cpp");
  return cvec(frame.begin() + p.cpp_len, frame.end());
}

}  // namespace afdm
