// Command-line front end.
#pragma once

namespace afdm {

// Full CLI: subcommands mse-vs-l, mse-vs-snr, joint-vs-stepwise,
// cir-sweep, ber, selftest. Returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace afdm
