#include "afdm/harness/record.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace afdm {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(const std::vector<ResultRecord>& records, std::ostream& os) {
  os << "experiment,channel,scheme,estimator,n,cpp_len,snr_db,eps,"
        "metric,value,stderr,trials,seed\n";
  for (const ResultRecord& r : records) {
    os << r.experiment << ',' << r.channel << ',' << r.scheme << ','
       << r.estimator << ',' << r.n << ',' << r.cpp_len << ','
       << format_double(r.snr_db) << ',' << format_double(r.eps) << ','
       << r.metric << ',' << format_double(r.value) << ','
       << format_double(r.se) << ',' << r.trials << ',' << r.seed << '\n';
  }
}

void write_cir_csv(const std::vector<ResultRecord>& records, std::ostream& os) {
  // Preserve sweep order; pair the two metrics per eps.
  std::vector<double> order;
  std::map<double, std::pair<double, double>> rows;
  for (const ResultRecord& r : records) {
    auto it = rows.find(r.eps);
    if (it == rows.end()) {
      order.push_back(r.eps);
      it = rows.emplace(r.eps, std::make_pair(
                                   std::numeric_limits<double>::quiet_NaN(),
                                   std::numeric_limits<double>::quiet_NaN()))
               .first;
    }
    if (r.metric == "cir_plain_db") it->second.first = r.value;
    else if (r.metric == "cir_mm_db") it->second.second = r.value;
    else throw std::invalid_argument("write_cir_csv: unexpected metric " + r.metric);
  }
  os << "eps,cir_plain_db,cir_mm_db\n";
  for (double e : order) {
    const auto& pr = rows.at(e);
    os << format_double(e) << ',' << format_double(pr.first) << ','
       << format_double(pr.second) << '\n';
  }
}

}  // namespace afdm
