#include "torsionlab/cli.hpp"

int main(int argc, char **argv) { return torsionlab::cli::run(argc, argv); }
