#include <iostream>

#include "probconn/cli.hpp"

int main(int argc, char** argv) {
  return probconn::run_command(argc, argv, std::cout, std::cerr);
}
