#include "prophet/cli_io.hpp"

int main(int argc, char** argv) { return prophet::cli_main(argc, argv); }
