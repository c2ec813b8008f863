#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"
#include "lgroup/intmat.hpp"

int main(int argc, char** argv) {
  lgroup::set_verify(true);
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
