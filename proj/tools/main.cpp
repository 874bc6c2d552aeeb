#include "cli.hpp"

int main(int argc, char** argv) { return stripbie::cli::main(argc, argv); }
