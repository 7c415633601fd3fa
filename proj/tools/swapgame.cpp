#include "swapgame/cli.hpp"

int main(int argc, char** argv) { return swapgame::cli::run(argc, argv); }
