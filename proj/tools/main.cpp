#include "evclust/cli.hpp"

int main(int argc, char** argv) {
  return evclust::cli::run(argc, argv);
}
