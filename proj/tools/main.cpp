#include "graphau/cli.hpp"

int main(int argc, char** argv) { return graphau::cli::run(argc, argv); }
