#include "cli.hpp"

int main(int argc, char** argv) { return sepfam::run_cli(argc, argv); }
