#include "afdm/harness/cli.hpp"

int main(int argc, char** argv) { return afdm::run_cli(argc, argv); }
