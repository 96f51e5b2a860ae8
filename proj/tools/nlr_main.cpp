#include "nlr/cli.h"

int main(int argc, char** argv) { return nlr::cli::main(argc, argv); }
