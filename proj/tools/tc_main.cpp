#include "tc/harness/cli.hpp"

int main(int argc, char** argv) { return tc::harness::cli_main(argc, argv); }
