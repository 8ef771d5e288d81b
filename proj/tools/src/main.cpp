#include <iostream>

#include "rwinv_app/commands.hpp"

int main(int argc, char** argv) { return rwinv::app::run(argc, argv, std::cout, std::cerr); }
