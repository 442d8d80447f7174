#include "afdm/harness/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "afdm/harness/config.hpp"
#include "afdm/harness/experiment.hpp"
#include "afdm/harness/record.hpp"
#include "afdm/harness/selftest.hpp"
#include "afdm/ici.hpp"

namespace afdm {

namespace {

struct CliState {
  ExperimentConfig cfg;
  std::string out_path;  // empty: stdout
  std::string cpp_list;
  std::string snr_list;
  std::string eps_list;
  std::string channel = "awgn";
  double c1 = std::numeric_limits<double>::quiet_NaN();
  double c2 = std::numeric_limits<double>::quiet_NaN();
  double eps_fixed = std::numeric_limits<double>::quiet_NaN();
};

void add_common(CLI::App* sub, CliState& st) {
  sub->add_option("--n", st.cfg.n, "Subcarrier count (even)")
      ->capture_default_str();
  sub->add_option("--c1", st.c1,
                  "Time chirp rate (default: Doppler minimum for the profile)");
  sub->add_option("--c2", st.c2, "Second chirp rate (default: 1/(2N))");
  sub->add_option("--snr", st.snr_list,
                  "SNR list in dB: 'a,b,c' or 'start:step:stop' or 'inf'")
      ->capture_default_str();
  sub->add_option("--channel", st.channel, "Channel kind: awgn | doubly")
      ->check(CLI::IsMember({"awgn", "doubly"}))
      ->capture_default_str();
  sub->add_option("--paths", st.cfg.profile.paths, "Channel paths")
      ->capture_default_str();
  sub->add_option("--max-delay", st.cfg.profile.max_delay,
                  "Largest path delay in samples")
      ->capture_default_str();
  sub->add_option("--max-doppler", st.cfg.profile.max_doppler,
                  "Largest normalized Doppler")
      ->capture_default_str();
  sub->add_option("--trials", st.cfg.trials, "Monte Carlo trials per point")
      ->capture_default_str();
  sub->add_option("--seed", st.cfg.seed, "Base RNG seed")
      ->capture_default_str();
  sub->add_option("--threads", st.cfg.threads,
                  "Worker threads (0 = hardware)")
      ->capture_default_str();
  sub->add_option("--out", st.out_path, "Output CSV path (default: stdout)");
  sub->set_config("--config", "", "Read options from a key=value file");
}

ExperimentConfig finalize(CliState& st, ExperimentKind kind) {
  st.cfg.kind = kind;
  st.cfg.channel = st.channel == "doubly" ? ChannelKind::Doubly
                                          : ChannelKind::Awgn;
  if (!st.cpp_list.empty()) st.cfg.cpp_lengths = parse_int_list(st.cpp_list);
  if (!st.snr_list.empty()) st.cfg.snr_db = parse_double_list(st.snr_list);
  if (kind == ExperimentKind::CirSweep && !st.eps_list.empty())
    st.cfg.eps_grid = parse_double_list(st.eps_list);
  if (!std::isnan(st.c1)) st.cfg.c1 = st.c1;
  if (!std::isnan(st.c2)) st.cfg.c2 = st.c2;
  if (!std::isnan(st.eps_fixed)) st.cfg.eps_fixed = st.eps_fixed;
  validate_config(st.cfg);
  return st.cfg;
}

int execute(CliState& st, ExperimentKind kind) {
  const ExperimentConfig cfg = finalize(st, kind);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<ResultRecord> records = run_experiment(cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!st.out_path.empty()) {
    file.open(st.out_path, std::ios::binary);
    if (!file)
      throw std::runtime_error("cannot open output file: " + st.out_path);
    os = &file;
  }
  if (kind == ExperimentKind::CirSweep)
    write_cir_csv(records, *os);
  else
    write_csv(records, *os);
  os->flush();

  std::cerr << to_string(kind) << ": " << records.size() << " records"
            << (st.out_path.empty() ? "" : " -> " + st.out_path) << " ("
            << format_double(secs) << " s, seed " << cfg.seed << ")\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"AFDM timing/CFO synchronization and ICI mitigation simulator"};
  app.require_subcommand(1);

  CliState mse_l, mse_snr, jvs, cir, ber;

  CLI::App* s1 = app.add_subcommand(
      "mse-vs-l", "Offset-estimation MSE vs prefix length");
  mse_l.cpp_list = "2,4,8,12,16,20,28,36,48,60";
  mse_l.snr_list = "10,15,20";
  add_common(s1, mse_l);
  s1->add_option("--l", mse_l.cpp_list, "Prefix length list")
      ->capture_default_str();
  s1->add_option("--eps-grid-step", mse_l.cfg.eps_grid_step,
                 "Joint-search CFO grid step (0 = 1/(64N))");
  s1->add_option("--eps", mse_l.eps_fixed,
                 "Pin the true CFO (default: uniform on [-0.4, 0.4])");

  CLI::App* s2 =
      app.add_subcommand("mse-vs-snr", "Offset-estimation MSE vs SNR");
  mse_snr.cpp_list = "5,20,60";
  mse_snr.snr_list = "0:5:30";
  add_common(s2, mse_snr);
  s2->add_option("--l", mse_snr.cpp_list, "Prefix length list")
      ->capture_default_str();
  s2->add_option("--eps-grid-step", mse_snr.cfg.eps_grid_step,
                 "Joint-search CFO grid step (0 = 1/(64N))");
  s2->add_option("--eps", mse_snr.eps_fixed,
                 "Pin the true CFO (default: uniform on [-0.4, 0.4])");

  CLI::App* s3 = app.add_subcommand(
      "joint-vs-stepwise", "Joint vs two-step estimator comparison");
  jvs.cpp_list = "5,20,60";
  jvs.snr_list = "20";
  add_common(s3, jvs);
  s3->add_option("--l", jvs.cpp_list, "Prefix length list")
      ->capture_default_str();
  s3->add_option("--eps-grid-step", jvs.cfg.eps_grid_step,
                 "Joint-search CFO grid step (0 = 1/(64N))");
  s3->add_option("--eps", jvs.eps_fixed,
                 "Pin the true CFO (default: uniform on [-0.4, 0.4])");

  CLI::App* s4 = app.add_subcommand(
      "cir-sweep", "Analytic carrier-to-interference ratio vs residual CFO");
  cir.cfg.n = 1024;
  cir.cfg.cpp_lengths = {1};
  cir.cfg.snr_db.clear();
  cir.eps_list = "0.01:0.01:0.30";
  add_common(s4, cir);
  s4->add_option("--eps", cir.eps_list, "Residual CFO list")
      ->capture_default_str();

  CLI::App* s5 = app.add_subcommand(
      "ber", "Uncoded BPSK error rate of mirror-mapped vs plain blocks");
  ber.cpp_list = "30";
  ber.snr_list = "0:4:20";
  ber.channel = "doubly";
  ber.cfg.trials = 20000;
  add_common(s5, ber);
  s5->add_option("--l", ber.cpp_list, "Prefix length")->capture_default_str();
  s5->add_option("--eps-true", ber.cfg.ber_eps_true,
                 "CFO seen by the tracking stage")
      ->capture_default_str();
  s5->add_option("--eps-resid", ber.cfg.ber_eps_resid,
                 "Residual CFO for the fixed-offset schemes")
      ->capture_default_str();

  CLI::App* s6 = app.add_subcommand(
      "q-profile",
      "Interference coefficient magnitude and phase across output bins");
  struct {
    int n = 1024;
    double c1 = std::numeric_limits<double>::quiet_NaN();
    double c2 = std::numeric_limits<double>::quiet_NaN();
    double eps = 0.05;
    int m_hat = 0;
    std::string out;
  } qp;
  s6->add_option("--n", qp.n, "Subcarrier count (even)")->capture_default_str();
  s6->add_option("--c1", qp.c1,
                 "Time chirp rate (default: Doppler minimum for the profile)");
  s6->add_option("--c2", qp.c2, "Second chirp rate (default: 1/(2N))");
  s6->add_option("--eps", qp.eps, "Residual CFO")->capture_default_str();
  s6->add_option("--m-hat", qp.m_hat, "Transmitted bin index")
      ->capture_default_str();
  s6->add_option("--out", qp.out, "Output CSV path (default: stdout)");

  CLI::App* s7 =
      app.add_subcommand("selftest", "Run the bundled verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (s1->parsed()) return execute(mse_l, ExperimentKind::MseVsL);
    if (s2->parsed()) return execute(mse_snr, ExperimentKind::MseVsSnr);
    if (s3->parsed()) return execute(jvs, ExperimentKind::JointVsStepwise);
    if (s4->parsed()) return execute(cir, ExperimentKind::CirSweep);
    if (s5->parsed()) return execute(ber, ExperimentKind::Ber);
    if (s6->parsed()) {
      ExperimentConfig cfg;
      cfg.n = qp.n;
      if (!std::isnan(qp.c1)) cfg.c1 = qp.c1;
      if (!std::isnan(qp.c2)) cfg.c2 = qp.c2;
      const AfdmParams p = cfg.params_for(1);
      if (qp.m_hat < 0 || qp.m_hat >= p.n)
        throw std::invalid_argument("q-profile: --m-hat out of range");
      std::ofstream file;
      std::ostream* os = &std::cout;
      if (!qp.out.empty()) {
        file.open(qp.out, std::ios::binary);
        if (!file)
          throw std::runtime_error("cannot open output file: " + qp.out);
        os = &file;
      }
      *os << "m,q_abs,q_angle\n";
      for (int m = 0; m < p.n; ++m) {
        const cdbl q = ici_coefficient(m, qp.m_hat, qp.eps, p);
        *os << m << ',' << format_double(std::abs(q)) << ','
            << format_double(std::arg(q)) << '\n';
      }
      os->flush();
      return 0;
    }
    if (s7->parsed()) return selftest(std::cout) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace afdm
