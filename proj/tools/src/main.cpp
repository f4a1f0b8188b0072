#include "pgequiv_cli/commands.hpp"

int main(int argc, char** argv) { return pgequiv::cli::run(argc, argv); }
