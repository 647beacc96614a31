#include "bcv/commands.hpp"

int main(int argc, char** argv) { return bcv::run_cli(argc, argv); }
