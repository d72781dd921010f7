#include "dmsparse/cli.hpp"

int main(int argc, char** argv) { return dmsparse::run_cli(argc, argv); }
