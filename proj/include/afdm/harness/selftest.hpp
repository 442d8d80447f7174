// Bundled end-to-end verification suite.
#pragma once

#include <ostream>

namespace afdm {

// Runs quick independent checks of every module (closed forms against
// direct summation, roundtrips, estimator exactness, reproducibility).
// Prints one line per check; returns true when all pass.
bool selftest(std::ostream& os);

}  // namespace afdm
