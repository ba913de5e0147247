#include "pointlab/cli/commands.hpp"

int main(int argc, char** argv) { return pointlab::cli::run_cli(argc, argv); }
