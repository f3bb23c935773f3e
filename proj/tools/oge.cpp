#include "oge/cli.hpp"

int main(int argc, char** argv) { return oge::cli::run(argc, argv); }
