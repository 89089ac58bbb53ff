#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "frobenius/real.hpp"

int main(int argc, char** argv) {
  frobenius::WorkingPrecision precision(frobenius::kDefaultDigits);
  doctest::Context context(argc, argv);
  return context.run();
}
