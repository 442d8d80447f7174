// Result rows and CSV serialization.
#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace afdm {

// One scalar result. Optional fields are NaN (numeric) or empty (string)
// and serialize as empty CSV cells; infinities serialize as "inf".
struct ResultRecord {
  std::string experiment;
  std::string channel;
  std::string scheme;
  std::string estimator;
  int n = 0;
  int cpp_len = 0;
  double snr_db = std::numeric_limits<double>::quiet_NaN();
  double eps = std::numeric_limits<double>::quiet_NaN();
  std::string metric;
  double value = 0.0;
  double se = std::numeric_limits<double>::quiet_NaN();
  long long trials = 0;
  std::uint64_t seed = 0;
};

// Shortest round-trip-safe decimal ("%.12g"); inf -> "inf", NaN -> "".
std::string format_double(double v);

// Long format, one record per row:
//   experiment,channel,scheme,estimator,n,cpp_len,snr_db,eps,metric,value,stderr,trials,seed
void write_csv(const std::vector<ResultRecord>& records, std::ostream& os);

// Wide format for the CIR sweep: eps,cir_plain_db,cir_mm_db.
void write_cir_csv(const std::vector<ResultRecord>& records, std::ostream& os);

}  // namespace afdm
