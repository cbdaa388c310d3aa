#include "signpres/cli.hpp"

int main(int argc, char** argv) { return signpres::cli::run(argc, argv); }
