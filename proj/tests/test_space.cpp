#include <doctest.h>

#include "costlab/error.hpp"
#include "costlab/space.hpp"

using namespace costlab;

TEST_CASE("finite space") {
  CHECK_THROWS_AS(FiniteSpace(0), Error);
  FiniteSpace x(4);
  CHECK(x.atom_measure() == Rational(1, 4));
  CHECK(x.measure(4) == 1);
}

TEST_CASE("partial maps must be injective functions on the space") {
  FiniteSpace x(4);
  PartialMap ok("a", x, {{2, 3}, {0, 1}});
  CHECK(ok.pairs().front() == AtomPair{0, 1});
  CHECK(ok(2) == 3u);
  CHECK_FALSE(ok(1).has_value());
  CHECK(ok.domain_measure() == Rational(1, 2));

  try {
    PartialMap("bad", x, {{0, 1}, {0, 2}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("'bad'") != std::string::npos);
    CHECK(std::string(e.what()).find("duplicate source atom 0") != std::string::npos);
  }
  CHECK_THROWS_AS(PartialMap("b", x, {{0, 2}, {1, 2}}), Error);
  CHECK_THROWS_AS(PartialMap("b", x, {{0, 4}}), Error);
  CHECK_THROWS_AS(PartialMap("b", x, {{5, 0}}), Error);
}

TEST_CASE("graphings reject mixed spaces and duplicate names") {
  FiniteSpace x(3);
  PartialMap a("a", x, {{0, 1}});
  CHECK_THROWS_AS(Graphing(x, {a, a}), Error);
  CHECK_THROWS_AS(Graphing(FiniteSpace(4), {a}), Error);
}

TEST_CASE("relations are canonical") {
  FiniteSpace x(6);
  std::vector<std::size_t> labels{7, 3, 7, 3, 7, 9};
  auto r = Relation::from_labels(x, labels);
  CHECK(r.rep() == std::vector<Atom>{0, 1, 0, 1, 0, 5});
  CHECK(r.class_count() == 3);
  CHECK(r.classes() == std::vector<std::vector<Atom>>{{0, 2, 4}, {1, 3}, {5}});
  for (Atom a = 0; a < 6; ++a) CHECK(r.rep(r.rep(a)) == r.rep(a));

  auto same = Relation::from_classes(x, {{3, 1}, {5}, {4, 2, 0}});
  CHECK(same == r);
  CHECK_THROWS_AS(Relation::from_classes(x, {{0, 1}, {1, 2, 3, 4, 5}}), Error);
  CHECK_THROWS_AS(Relation::from_classes(x, {{0, 1}}), Error);
  CHECK_THROWS_AS(Relation::from_classes(x, {{0, 1, 2, 3, 4, 5, 6}}), Error);
  CHECK(Relation::diagonal(x).class_count() == 6);
}

TEST_CASE("edge sets and subsets have set semantics") {
  FiniteSpace x(4);
  EdgeSet s(x, {{1, 2}, {0, 1}, {1, 2}, {3, 3}});
  CHECK(s.edges().size() == 3);
  CHECK(s.loop_count() == 1);
  Subset a(x, {3, 1, 1});
  CHECK(a.members() == std::vector<Atom>{1, 3});
  CHECK(a.measure() == Rational(1, 2));
  CHECK_THROWS_AS(Subset(x, {4}), Error);
}
