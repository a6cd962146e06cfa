#include <cstdlib>
#include <cstring>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  zsup::cli::Session session;
  if (const char* color = std::getenv("ZSUP_COLOR")) session.color = std::strcmp(color, "1") == 0;
  const std::vector<std::string> tokens(argv + 1, argv + argc);
  const auto outcome = zsup::cli::run(tokens, session);
  std::cout << outcome.out;
  std::cerr << outcome.err;
  return outcome.code;
}
