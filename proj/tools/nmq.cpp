#include <iostream>

#include "nmq/app/commands.hpp"

int main(int argc, char** argv) { return nmq::app::run_cli(argc, argv, std::cout, std::cerr); }
