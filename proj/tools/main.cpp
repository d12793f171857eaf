#include <iostream>

#include "timelike/cli.hpp"

int main(int argc, char** argv) {
  return timelike::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
