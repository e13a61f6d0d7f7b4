#include <iostream>
#include <string>
#include <vector>

#include "lincert/document.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return lincert::run_cli(args, std::cout, std::cerr);
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return 1;
  }
}
