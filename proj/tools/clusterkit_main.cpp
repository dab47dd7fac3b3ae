#include "clusterkit/cli.hpp"

int main(int argc, char** argv) { return clusterkit::cli::run(argc, argv); }
