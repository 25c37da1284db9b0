#include <iostream>

#include "eigencount/cli.hpp"

int main(int argc, char** argv) {
  return eigencount::cli::run(argc, argv, std::cout, std::cerr);
}
