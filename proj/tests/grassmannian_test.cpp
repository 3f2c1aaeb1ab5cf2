#include <stdexcept>

#include "doctest.h"
#include "qchow/grassmannian.hpp"

using namespace qchow;

TEST_CASE("degree pairing on the maximal grassmannian") {
  QuadricContext n5(5);  // d = 2
  CHECK(degree_z_product(ZProduct({0, 1, 2}, n5), n5));
  CHECK(!degree_z_product(ZProduct({0, 0, 1}, n5), n5));
  CHECK(!degree_z_product(ZProduct({0, 1}, n5), n5));
  // Canonicalization makes the pairing order-free.
  CHECK(degree_z_product(ZProduct({2, 0, 1}, n5), n5));
}

TEST_CASE("malformed index lists are rejected") {
  QuadricContext n5(5);
  CHECK_THROWS_AS(ZProduct({}, n5), std::domain_error);
  CHECK_THROWS_AS(ZProduct({0, 3}, n5), std::domain_error);
  CHECK_THROWS_AS(ZProduct({-1}, n5), std::domain_error);
  CHECK_THROWS_AS(ZProduct({0, 0, 1, 2}, n5), std::domain_error);
}

TEST_CASE("exactly one full-length list evaluates positively, d <= 6") {
  for (int d = 0; d <= 6; ++d) {
    QuadricContext ctx(2 * d + 1);
    long hits = 0;
    long total = 0;
    std::vector<int> idx;
    auto rec = [&](auto&& self, int next_min) -> void {
      if (static_cast<int>(idx.size()) == d + 1) {
        ++total;
        if (degree_z_product(ZProduct(idx, ctx), ctx)) ++hits;
        return;
      }
      for (int a = next_min; a <= d; ++a) {
        idx.push_back(a);
        self(self, a);
        idx.pop_back();
      }
    };
    rec(rec, 0);
    CHECK(hits == 1);
    CHECK(total >= 1);
  }
}
