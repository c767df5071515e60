#include <polyindex/cli.hpp>

int main(int argc, char** argv) { return polyindex::cli::run(argc, argv); }
