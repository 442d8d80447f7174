#include "afdm/ici.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace afdm {

namespace {

void check_even_block(int n, const char* what) {
  if (n < 4 || (n % 2) != 0)
    throw std::invalid_argument(std::string(what) + ": N must be even and >= 4");
}

void check_eps(double eps, const char* what) {
  if (!(std::abs(eps) < 1.0))
    throw std::invalid_argument(std::string(what) + ": |eps| must be < 1");
}

// leakage() on q already reduced into [0, n).
cdbl leakage_reduced(int qr, double eps, int n) {
  if (eps == 0.0) return qr == 0 ? cdbl(1.0, 0.0) : cdbl(0.0, 0.0);
  const double num = std::sin(kPi * eps);
  const double den = n * std::sin(kPi * (qr + eps) / n);
  const cdbl ph = cis_cycles(0.5 * (eps * (1.0 - 1.0 / n) -
                                    static_cast<double>(qr) / n));
  return (num / den) * ph;
}

}  // namespace

cdbl leakage(long q, double eps, int n) {
  if (n < 1) throw std::invalid_argument("leakage: n must be >= 1");
  check_eps(eps, "leakage");
  int qr = static_cast<int>(((q % n) + n) % n);
  return leakage_reduced(qr, eps, n);
}

cdbl ici_coefficient(int m, int m_hat, double eps, const AfdmParams& p) {
  validate(p);
  if (m < 0 || m >= p.n || m_hat < 0 || m_hat >= p.n)
    throw std::invalid_argument("ici_coefficient: indices must lie in [0, N)");
  const cdbl chirp = cis_cycles(p.c2 * (static_cast<double>(m) * m -
                                        static_cast<double>(m_hat) * m_hat));
  return chirp * leakage(m - m_hat, eps, p.n);
}

cvec mirror_map(const cvec& data, int n) {
  check_even_block(n, "mirror_map");
  if (static_cast<int>(data.size()) != n / 2 - 1)
    throw std::invalid_argument("mirror_map: expected N/2-1 symbols, got " +
                                std::to_string(data.size()));
  cvec out(n, cdbl(0.0, 0.0));
  for (int m = 1; m <= n / 2 - 1; ++m) out[m] = data[m - 1];
  for (int m = n / 2 + 1; m <= n - 1; ++m) out[m] = -data[n - m - 1];
  return out;
}

cvec mirror_demap(const cvec& y) {
  const int n = static_cast<int>(y.size());
  check_even_block(n, "mirror_demap");
  cvec data(n / 2 - 1);
  for (int mh = 1; mh <= n / 2 - 1; ++mh) {
    data[mh - 1] = 0.5 * (y[mh] - y[n - mh]);
  }
  return data;
}

double cir_plain_at(double eps, const AfdmParams& p, int m_hat) {
  validate(p);
  check_eps(eps, "cir_plain_at");
  if (m_hat < 0 || m_hat >= p.n)
    throw std::invalid_argument("cir_plain_at: m_hat must lie in [0, N)");
  if (eps == 0.0) return std::numeric_limits<double>::infinity();
  const int n = p.n;
  double denom = 0.0;
  for (int m = 0; m < n; ++m) {
    if (m == m_hat) continue;
    denom += std::norm(leakage(m - m_hat, eps, n));
  }
  const double num = std::norm(leakage(0, eps, n));
  return num / denom;
}

double cir_plain(double eps, const AfdmParams& p) {
  return cir_plain_at(eps, p, 0);
}

double cir_mirror(double eps, const AfdmParams& p) {
  validate(p);
  check_eps(eps, "cir_mirror");
  if (eps == 0.0) return std::numeric_limits<double>::infinity();
  const int n = p.n;

  std::vector<cdbl> s(n);  // leakage on the reduced lag
  for (int q = 0; q < n; ++q) s[q] = leakage(q, eps, n);
  auto sq = [&](int q) { return s[((q % n) + n) % n]; };

  double total = 0.0;
  for (int mh = 1; mh <= n / 2 - 1; ++mh) {
    // Mirror combining folds the block-antisymmetric halves together; the
    // chirp factors shared by m and N-m cancel in the power ratio.
    const double num = std::norm(2.0 * sq(0) - sq(-2 * mh) - sq(2 * mh));
    double den = 0.0;
    for (int m = 1; m <= n / 2 - 1; ++m) {
      if (m == mh) continue;
      den += std::norm(sq(m - mh) + sq(mh - m) - sq(m + mh) - sq(-m - mh));
    }
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    total += num / den;
  }
  return total * 2.0 / (n - 2.0);
}

}  // namespace afdm
