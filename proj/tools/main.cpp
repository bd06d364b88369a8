#include "cli.hpp"

int main(int argc, char** argv) { return srle::cli::run(argc, argv); }
