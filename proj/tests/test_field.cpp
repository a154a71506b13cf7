#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "singmat/field.hpp"

using namespace singmat;

TEST_CASE("addition examples") {
  CHECK(FieldCtx(2).add(1, 1) == 0);
  CHECK(FieldCtx(5).add(3, 4) == 2);
  CHECK(FieldCtx(3).add(0, 2) == 2);
}

TEST_CASE("multiplication and negation examples") {
  CHECK(FieldCtx(2).mul(1, 1) == 1);
  CHECK(FieldCtx(3).neg(1) == 2);

  // Cross-check mul against repeated addition over small fields.
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    FieldCtx f(q);
    for (elem_t a = 0; a < q; ++a) {
      for (elem_t b = 0; b < q; ++b) {
        elem_t by_addition = 0;
        for (elem_t k = 0; k < b; ++k) by_addition = f.add(by_addition, a);
        CHECK(f.mul(a, b) == by_addition);
      }
    }
  }
  CHECK(FieldCtx(5).mul(2, 3) == 1);
}

TEST_CASE("inverse examples against exhaustive search") {
  auto inv_by_search = [](const FieldCtx& f, elem_t a) {
    for (std::uint32_t b = 0; b < f.order(); ++b) {
      if (f.mul(a, elem_t(b)) == 1) return elem_t(b);
    }
    FAIL("no inverse found");
    return elem_t(0);
  };
  CHECK(FieldCtx(2).inv(1) == 1);
  CHECK(FieldCtx(5).inv(2) == inv_by_search(FieldCtx(5), 2));
  CHECK(FieldCtx(5).inv(2) == 3);
  CHECK(FieldCtx(7).inv(3) == inv_by_search(FieldCtx(7), 3));
  CHECK(FieldCtx(7).inv(3) == 5);
}

TEST_CASE("inverse of zero throws") {
  CHECK_THROWS_AS(FieldCtx(5).inv(0), ZeroInverseError);
}

TEST_CASE("inverses exhaustively over every prime up to 257") {
  for (std::uint32_t q = 2; q <= 257; ++q) {
    if (!is_prime(q)) continue;
    FieldCtx f(q);
    for (std::uint32_t a = 1; a < q; ++a) {
      CHECK(f.mul(elem_t(a), f.inv(elem_t(a))) == 1);
    }
  }
}

TEST_CASE("field axioms exhaustively for q in {2, 3, 5, 7}") {
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    FieldCtx f(q);
    for (elem_t a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      for (elem_t b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
        for (elem_t c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("reduce maps arbitrary integers into [0, q)") {
  FieldCtx f(7);
  CHECK(f.reduce(-1) == 6);
  CHECK(f.reduce(7) == 0);
  CHECK(f.reduce(-13) == 1);
  CHECK(f.reduce(20) == 6);
}

TEST_CASE("non-prime or out-of-range orders are rejected") {
  for (std::uint32_t q : {0u, 1u, 4u, 6u, 9u, 100u, 65536u}) {
    CHECK_THROWS_AS(FieldCtx{q}, std::invalid_argument);
  }
  CHECK_NOTHROW(FieldCtx{65521});
}
