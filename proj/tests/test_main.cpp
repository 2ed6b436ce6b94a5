#define DOCTEST_CONFIG_IMPLEMENT
#include <filesystem>

#include "doctest.h"

int main(int argc, char** argv) {
  std::filesystem::create_directories("scratch_unit");
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
