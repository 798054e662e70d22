#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "dsb/rng.hpp"

using namespace dsb;

TEST_CASE("streams are reproducible and distinct") {
  Rng a(5, 3), b(5, 3), c(5, 4), d(6, 3);
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    same_c += x == c.next();
    same_d += x == d.next();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("splitmix64 reference values") {
  std::uint64_t s = 1234567;
  CHECK(splitmix64(s) == 6457827717110365317ULL);
  CHECK(splitmix64(s) == 3203168211198807973ULL);
  CHECK(splitmix64(s) == 9817491932198370423ULL);
}

TEST_CASE("xoshiro256** seeded through SplitMix64") {
  // Values from an independent reimplementation of both generators.
  Rng rng(42);
  CHECK(rng.next() == 1546998764402558742ULL);
  CHECK(rng.next() == 6990951692964543102ULL);
  CHECK(rng.next() == 12544586762248559009ULL);
}

TEST_CASE("uniform and bounded draws stay in range") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.below(7) < 7U);
    const auto k = rng.between(-3, 3);
    CHECK(k >= -3);
    CHECK(k <= 3);
  }
}

TEST_CASE("normal draws have unit moments") {
  Rng rng(42);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  const double mean = s / n;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("sampling without replacement") {
  Rng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    auto s = rng.sample_without_replacement(20, 7);
    CHECK(s.size() == 7);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::set<int>(s.begin(), s.end()).size() == 7);
    CHECK(s.front() >= 0);
    CHECK(s.back() < 20);
  }
  CHECK(rng.sample_without_replacement(5, 5).size() == 5);
}
