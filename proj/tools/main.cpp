#include "cli.hpp"

int main(int argc, char** argv) { return bredon::cli_main(argc, argv); }
