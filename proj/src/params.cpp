#include "afdm/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace afdm {

void validate(const AfdmParams& p) {
  if (p.n < 4 || (p.n % 2) != 0)
    throw std::invalid_argument("AfdmParams.n must be even and >= 4, got " +
                                std::to_string(p.n));
  if (p.cpp_len < 1 || p.cpp_len > p.n)
    throw std::invalid_argument("AfdmParams.cpp_len must satisfy 1 <= L <= N, got " +
                                std::to_string(p.cpp_len));
  if (!std::isfinite(p.c1))
    throw std::invalid_argument("AfdmParams.c1 must be finite");
  if (!std::isfinite(p.c2))
    throw std::invalid_argument("AfdmParams.c2 must be finite");
}

double AfdmParams::min_c1(int n, double alpha_max) {
  return (2.0 * alpha_max + 1.0) / (2.0 * n);
}

AfdmParams AfdmParams::make(int n, double c1, double c2, int cpp_len) {
  AfdmParams p{n, c1, c2, cpp_len};
  validate(p);
  return p;
}

AfdmParams AfdmParams::for_doppler(int n, int cpp_len, double alpha_max) {
  return make(n, min_c1(n, alpha_max), 1.0 / (2.0 * n), cpp_len);
}

}  // namespace afdm
