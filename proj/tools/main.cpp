#include "cli.hpp"

int main(int argc, char** argv) { return collox_cli::run(argc, argv); }
