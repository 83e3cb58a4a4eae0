#include <iostream>
#include <string>
#include <vector>

#include "deconf/cli.hpp"

int main(int argc, char** argv) {
   std::vector<std::string> args(argv, argv + argc);
   return deconf::cli::run(args, std::cout, std::cerr);
}
