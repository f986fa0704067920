#include "cli/workbench.hpp"

int main(int argc, char** argv) { return dias::cli::main_entry(argc, argv); }
