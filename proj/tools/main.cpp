#include "framelab/cli.hpp"

int main(int argc, char** argv) { return framelab::cli::run(argc, argv); }
