#include <vector>
#include <string>

#include "isac/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return isac::cli::run(args);
}
