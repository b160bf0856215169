#include "sandlab/harness.hpp"

int main(int argc, char** argv) { return sandlab::harness::cli(argc, argv); }
