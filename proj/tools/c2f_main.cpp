#include <string>
#include <vector>

#include "c2f/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return c2f::cli::run(args);
}
