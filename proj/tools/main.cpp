#include "cli.hpp"

int main(int argc, char** argv) { return tbhfk::cli::main(argc, argv); }
