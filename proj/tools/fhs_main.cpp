#include "fhs/cli.hpp"

int main(int argc, char** argv) { return fhs::cli::main(argc, argv); }
