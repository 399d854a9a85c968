#include "boscribe/cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <iostream>

int main(int argc, char **argv)
{
  const char *no_color = std::getenv("BOSCRIBE_NO_COLOR");
  const bool color = isatty(STDERR_FILENO) && !(no_color && std::strcmp(no_color, "1") == 0);
  return boscribe::run_cli({argv + 1, argv + argc}, std::cout, std::cerr, color);
}
