// Residual-CFO intercarrier interference analysis and mirror mapping.
#pragma once

#include "afdm/params.hpp"
#include "afdm/types.hpp"

namespace afdm {

// Leakage of a residual CFO eps onto the subcarrier at distance q:
//   S_q = sin(pi eps) e^{j pi (eps (1 - 1/N) - q/N)} / (N sin(pi (q + eps)/N))
// evaluated on q reduced modulo N, so the N-periodicity is exact. At
// eps = 0 this collapses to the unit impulse.
cdbl leakage(long q, double eps, int n);

// Entry (m, m^) of the post-transform interference matrix:
//   Q = e^{j 2 pi c2 (m^2 - m^^2)} S_{m - m^}.
cdbl ici_coefficient(int m, int m_hat, double eps, const AfdmParams& p);

// Mirror mapping of N/2 - 1 data symbols onto an N-point block:
//   out[0] = out[N/2] = 0,
//   out[m] = data[m-1]            for 1 <= m <= N/2 - 1,
//   out[m] = -data[N-m-1]         for N/2 + 1 <= m <= N - 1.
cvec mirror_map(const cvec& data, int n);

// Inverse combiner: data_hat[m^-1] = (y[m^] - y[N-m^]) / 2 for
// m^ = 1..N/2-1.
cvec mirror_demap(const cvec& y);

// Carrier-to-interference ratio (linear) of a plain block at output bin
// m_hat under residual CFO eps; infinite at eps = 0.
double cir_plain_at(double eps, const AfdmParams& p, int m_hat);
double cir_plain(double eps, const AfdmParams& p);  // m_hat = 0

// Average CIR of the mirror-mapped block over its data bins; the mirror
// pairing cancels the leading antisymmetric leakage terms.
double cir_mirror(double eps, const AfdmParams& p);

}  // namespace afdm
