#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) {
  return simulate::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
