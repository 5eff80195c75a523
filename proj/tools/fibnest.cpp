#include "fibnest/cli.hpp"

int main(int argc, char** argv) { return fibnest::cli::run(argc, argv); }
