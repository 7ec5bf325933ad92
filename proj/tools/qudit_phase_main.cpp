#include "qudit_phase/cli.hpp"

int main(int argc, char** argv) { return qudit_phase::cli::run(argc, argv); }
