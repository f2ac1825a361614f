// Command-line driver. Subcommands: run, plot, verify, scenarios.

#include <cstdio>

#include "wavemap/geometry.hpp"

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::fprintf(stderr, "wavemap: not implemented yet\n");
  return 1;
}
