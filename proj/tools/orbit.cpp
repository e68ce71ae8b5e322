#include "orbit_cli.hpp"

int main(int argc, char** argv) { return orbitforge::cli::run(argc, argv); }
