#include <tropbt/common.hpp>

#include <iostream>

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::cout << "tropbt: not yet wired\n";
  return 1;
}
