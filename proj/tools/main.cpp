#include "cli.hpp"

int main(int argc, char** argv) { return softclique::cli::dispatch(argc, argv); }
