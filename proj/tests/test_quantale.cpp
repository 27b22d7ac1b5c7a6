#include <catch2/catch_amalgamated.hpp>

#include "qfca/quantale.hpp"

using namespace qfca;

namespace {

// Exhaustive law suite shared by the builtin families.
void check_quantale_laws(const QuantalePtr& q) {
  const int n = q->size();
  for (Elem x = 0; x < n; ++x) {
    REQUIRE(q->tensor(q->unit(), x) == x);
    for (Elem y = 0; y < n; ++y) {
      REQUIRE(q->tensor(x, y) == q->tensor(y, x));
      for (Elem z = 0; z < n; ++z) {
        REQUIRE(q->tensor(q->tensor(x, y), z) == q->tensor(x, q->tensor(y, z)));
        // residuation adjointness
        REQUIRE(q->leq(q->tensor(x, y), z) ==
                q->leq(x, q->residuate(y, z)));
        // distributivity over binary joins
        REQUIRE(q->tensor(x, q->join2(y, z)) ==
                q->join2(q->tensor(x, y), q->tensor(x, z)));
      }
    }
    REQUIRE(q->tensor(x, q->bottom()) == q->bottom());
  }
}

}  // namespace

TEST_CASE("boolean2 is the two-element Boolean algebra") {
  auto q = Quantale::boolean2();
  REQUIRE(q->size() == 2);
  REQUIRE(q->unit() == 1);
  REQUIRE(q->top() == 1);
  REQUIRE(q->bottom() == 0);
  REQUIRE(q->residuate(1, 0) == 0);  // classical implication
  REQUIRE(q->residuate(0, 0) == 1);
  REQUIRE(q->residuate(0, 1) == 1);
  REQUIRE(q->residuate(1, 1) == 1);
  REQUIRE(q->join({0, 1}) == 1);
  check_quantale_laws(q);
}

TEST_CASE("lukasiewicz chain residuation") {
  auto q = Quantale::lukasiewicz(3);  // {0, 1/2, 1}
  REQUIRE(q->label(1) == "1/2");
  REQUIRE(q->residuate(1, 0) == 1);  // min(1, 1 - 1/2 + 0) = 1/2
  REQUIRE(q->meet({1, 2}) == 1);
  REQUIRE(q->tensor(1, 1) == 0);
  check_quantale_laws(q);
}

TEST_CASE("goedel chain residuation returns the consequent below") {
  auto q = Quantale::goedel(3);
  REQUIRE(q->residuate(1, 0) == 0);  // 1/2 -> 0 = 0
  REQUIRE(q->residuate(0, 1) == 2);  // antecedent below: top
  REQUIRE(q->tensor(1, 2) == 1);
  check_quantale_laws(q);
}

TEST_CASE("lawvere chain: reversed order, saturating addition") {
  auto q = Quantale::lawvere(4);  // {0,1,2,3,inf}
  REQUIRE(q->size() == 5);
  REQUIRE(q->unit() == 0);
  // 2 (x) 3 = 5 > 3, clipped to inf
  REQUIRE(q->tensor(2, 3) == q->index_of("inf"));
  REQUIRE(q->tensor(1, 2) == 3);
  // x -> y = max(0, y - x) on finite values
  REQUIRE(q->residuate(3, 1) == 0);
  REQUIRE(q->residuate(1, 3) == 2);
  // the empty join is the lattice bottom, numerically inf
  REQUIRE(q->join({}) == q->index_of("inf"));
  REQUIRE(q->bottom() == q->index_of("inf"));
  REQUIRE(q->top() == 0);
  check_quantale_laws(q);
}

TEST_CASE("lawvere order is the reverse of the numeric order") {
  auto q = Quantale::lawvere(3);
  for (Elem x = 0; x < q->size(); ++x)
    for (Elem y = 0; y < q->size(); ++y)
      REQUIRE(q->leq(x, y) == (x >= y));  // inf is the last index
}

TEST_CASE("rejects a non-monoid table with a witness") {
  // {0,1} with x*y = x v y and unit 1: 1 * 0 = 1 != 0.
  REQUIRE_THROWS_AS(
      Quantale::make({"0", "1"}, {{true, true}, {false, true}},
                     {{0, 1}, {1, 1}}, 1),
      NotMonoid);
  try {
    Quantale::make({"0", "1"}, {{true, true}, {false, true}},
                   {{0, 1}, {1, 1}}, 1);
  } catch (const NotMonoid& e) {
    REQUIRE(std::string(e.what()).find("unit law") != std::string::npos);
  }
}

TEST_CASE("rejects orders that are not lattices") {
  // Two incomparable elements and nothing else: no join.
  std::vector<std::vector<bool>> leq{{true, false}, {false, true}};
  std::vector<std::vector<Elem>> t{{0, 0}, {0, 1}};
  REQUIRE_THROWS_AS(Quantale::make({"a", "b"}, leq, t, 1), LatticeIncomplete);
}

TEST_CASE("rejects a non-distributive multiplication") {
  // M3: three atoms a,b,c between 0 and 1. Meet is a commutative monoid
  // with unit 1 but a /\ (b v c) = a while (a/\b) v (a/\c) = 0.
  std::vector<std::vector<bool>> leq{
      {true, true, true, true, true},
      {false, true, false, false, true},
      {false, false, true, false, true},
      {false, false, false, true, true},
      {false, false, false, false, true}};
  std::vector<std::vector<Elem>> t{
      {0, 0, 0, 0, 0},
      {0, 1, 0, 0, 1},
      {0, 0, 2, 0, 2},
      {0, 0, 0, 3, 3},
      {0, 1, 2, 3, 4}};
  REQUIRE_THROWS_AS(Quantale::make({"0", "a", "b", "c", "1"}, leq, t, 4),
                    NotDistributive);
}

TEST_CASE("builtin residuation tables match closed forms") {
  auto b = Quantale::boolean2();
  for (Elem x = 0; x < 2; ++x)
    for (Elem y = 0; y < 2; ++y)
      REQUIRE(b->residuate(x, y) == ((x <= y) ? 1 : 0));

  auto l = Quantale::lukasiewicz(4);
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y)
      REQUIRE(l->residuate(x, y) == std::min(3, 3 - x + y));

  auto g = Quantale::goedel(4);
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y)
      REQUIRE(g->residuate(x, y) == ((x <= y) ? 3 : y));
}

TEST_CASE("unknown family and bad sizes are rejected") {
  REQUIRE_THROWS_AS(Quantale::builtin("heyting", 3), UnknownFamily);
  REQUIRE_THROWS_AS(Quantale::goedel(1), BadSize);
  REQUIRE_THROWS_AS(Quantale::lawvere(0), BadSize);
}

TEST_CASE("a non-integral quantale: unit strictly below the top") {
  // 3-chain bot < k < top with top idempotent and unit in the middle
  std::vector<std::vector<bool>> leq{
      {true, true, true}, {false, true, true}, {false, false, true}};
  std::vector<std::vector<Elem>> t{{0, 0, 0}, {0, 1, 2}, {0, 2, 2}};
  auto q = Quantale::make({"bot", "k", "top"}, leq, t, 1);
  REQUIRE(q->unit() == 1);
  REQUIRE(q->top() == 2);
  REQUIRE(q->residuate(2, 1) == 0);  // top -> k = bot
  REQUIRE(q->residuate(1, 0) == 0);
  REQUIRE(q->residuate(0, 0) == 2);
  for (Elem x = 0; x < 3; ++x)
    for (Elem y = 0; y < 3; ++y)
      for (Elem z = 0; z < 3; ++z)
        REQUIRE(q->leq(q->tensor(x, y), z) ==
                q->leq(x, q->residuate(y, z)));
}

TEST_CASE("join and meet of arbitrary subsets") {
  auto q = Quantale::lukasiewicz(5);
  std::vector<Elem> s{1, 3};
  REQUIRE(q->join(s) == 3);
  REQUIRE(q->meet(s) == 1);
  REQUIRE(q->join({}) == q->bottom());
  REQUIRE(q->meet({}) == q->top());
}
