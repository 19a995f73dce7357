// Command line front end; all behavior lives in the library headers so the
// test suite can drive the same dispatcher in-process.
#include "noonabs/cli.hpp"

int main(int argc, char** argv) {
    return noonabs::cli::run_cli(argc, argv);
}
