#include "radtrace/cli.hpp"

int main(int argc, char** argv) { return radtrace::cli_main(argc, argv); }
