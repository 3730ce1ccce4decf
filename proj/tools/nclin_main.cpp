#include "nclin/cli.hpp"

int main(int argc, char** argv) { return nclin::run_cli(argc, argv); }
