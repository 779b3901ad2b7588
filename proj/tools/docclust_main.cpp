#include <iostream>

#include "docclust/cli.hpp"

int main(int argc, char **argv) {
  return docclust::cli_main(argc, argv, std::cout, std::cerr);
}
