#include "commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return qecwb::cli::main_entry(argc, argv, std::cout, std::cerr);
}
