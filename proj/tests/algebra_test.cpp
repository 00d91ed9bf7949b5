#include <doctest.h>

#include <random>

#include "taam/algebra.hpp"
#include "taam/aspect_lang.hpp"

using namespace taam;

namespace {

Algebra xy() { return Algebra({"x", "y"}); }

Element random_element(const Algebra& a, std::mt19937_64& rng) {
  std::vector<std::uint64_t> ms;
  for (std::uint64_t m = 0; m < a.minterm_count(); ++m)
    if (rng() & 1U) ms.push_back(m);
  return from_minterm_list(a, ms);
}

}  // namespace

TEST_CASE("construction rejects bad prop lists") {
  CHECK_THROWS_AS(Algebra({"x", "x"}), AlgebraError);
  CHECK_THROWS_AS(Algebra(std::vector<std::string>{}), AlgebraError);
  CHECK_NOTHROW(Algebra(std::vector<std::string>{}, AlgebraOptions{.max_props = 20, .allow_trivial = true}));
  CHECK_THROWS_AS(Algebra({"a", "b", "c"}, AlgebraOptions{.max_props = 2}), AlgebraError);
  CHECK_THROWS_AS(Algebra({"1x"}), AlgebraError);
  std::vector<std::string> many;
  for (int i = 0; i < 21; ++i) many.push_back("p" + std::to_string(i));
  CHECK_THROWS_AS(Algebra{many}, AlgebraError);
}

TEST_CASE("trivial algebra has one atom") {
  Algebra a(std::vector<std::string>{}, AlgebraOptions{.max_props = 20, .allow_trivial = true});
  CHECK(atoms(a).size() == 1);
  CHECK(carrier(a).size() == 2);
}

TEST_CASE("operations on mismatched algebras throw") {
  Algebra a({"x"});
  Algebra b({"y"});
  CHECK_THROWS_AS(meet(a.top(), b.top()), AlgebraError);
  CHECK_THROWS_AS(leq(a.top(), b.top()), AlgebraError);
  Algebra a2({"x"});
  CHECK(meet(a.prop("x"), a2.prop("x")) == a.prop("x"));
}

TEST_CASE("downset and upset examples") {
  auto a = xy();
  auto x = a.prop("x");
  auto y = a.prop("y");
  auto down = downset({~x});
  CHECK(down == ElementSet{~x, ~x & ~y, ~x & y, a.bottom()});
  CHECK(upset({x & y}).size() == 8);
  CHECK(downset({}).empty());
  CHECK(upset({}).empty());
}

TEST_CASE("inf and sup of the empty set") {
  auto a = xy();
  CHECK(inf_set(a, {}) == a.top());
  CHECK(sup_set(a, {}) == a.bottom());
}

TEST_CASE("eta of a prop") {
  auto a = xy();
  auto x = a.prop("x");
  auto y = a.prop("y");
  CHECK(eta(x) == ElementSet{x & y, x & ~y});
}

TEST_CASE("subalgebra recognition") {
  auto a = xy();
  auto x = a.prop("x");
  auto y = a.prop("y");
  CHECK_FALSE(is_subalgebra({a.bottom(), a.top(), x | y}, a));
  CHECK(is_subalgebra({a.bottom(), a.top(), x, ~x}, a));
  CHECK(is_subalgebra(carrier(a), a));
}

TEST_CASE("product of four one-prop algebras has 16 atoms") {
  std::vector<Algebra> parts{Algebra({"aCostH"}), Algebra({"bCostH"}), Algebra({"aP"}),
                             Algebra({"bP"})};
  auto p = disjoint_product(parts);
  CHECK(atoms(p.algebra).size() == 16);
  CHECK(p.embed(2, parts[2].prop("aP")) == p.algebra.prop("aP"));
  CHECK(p.embed(0, parts[0].top()) == p.algebra.top());
  CHECK_THROWS_AS(disjoint_product(std::vector<Algebra>{Algebra({"x"}), Algebra({"x"})}),
                  AlgebraError);
}

TEST_CASE("lattice laws hold exhaustively for small algebras") {
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<std::string> props;
    for (std::size_t i = 0; i < k; ++i) props.push_back("p" + std::to_string(i));
    Algebra a(props);
    auto all = carrier(a);
    std::vector<Element> v(all.begin(), all.end());
    CHECK(v.size() == (std::size_t{1} << (std::size_t{1} << k)));
    for (const auto& x : v) {
      CHECK(~~x == x);
      for (const auto& y : v) {
        CHECK(~(x & y) == (~x | ~y));
        CHECK(~(x | y) == (~x & ~y));
        if (k <= 2) {
          for (const auto& z : v) {
            CHECK((x & (y | z)) == ((x & y) | (x & z)));
            CHECK((x | (y & z)) == ((x | y) & (x | z)));
          }
        }
      }
    }
  }
}

TEST_CASE("lattice laws hold on random elements of larger algebras") {
  std::mt19937_64 rng(7);
  Algebra a({"a", "b", "c", "d", "e", "f", "g", "h"});
  for (int i = 0; i < 200; ++i) {
    auto x = random_element(a, rng);
    auto y = random_element(a, rng);
    auto z = random_element(a, rng);
    CHECK((x & (y | z)) == ((x & y) | (x & z)));
    CHECK((x | (y & z)) == ((x | y) & (x | z)));
    CHECK(~(x & y) == (~x | ~y));
    CHECK(~~x == x);
    CHECK(leq(x & y, x));
  }
}

TEST_CASE("join irreducibles are the atoms") {
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<std::string> props;
    for (std::size_t i = 0; i < k; ++i) props.push_back("p" + std::to_string(i));
    Algebra a(props);
    CHECK(join_irreducibles(a) == atoms(a));
  }
  CHECK_THROWS_AS(join_irreducibles(Algebra({"a", "b", "c", "d", "e"})), CapExceeded);
}

TEST_CASE("down and up closures are idempotent, monotone and extensive") {
  std::mt19937_64 rng(11);
  Algebra a({"p", "q", "r"});
  for (int i = 0; i < 40; ++i) {
    ElementSet s{random_element(a, rng), random_element(a, rng)};
    ElementSet t = s;
    t.insert(random_element(a, rng));
    auto ds = downset(s);
    auto us = upset(s);
    CHECK(downset(ds) == ds);
    CHECK(upset(us) == us);
    CHECK(std::includes(downset(t).begin(), downset(t).end(), ds.begin(), ds.end()));
    CHECK(std::includes(ds.begin(), ds.end(), s.begin(), s.end()));
    CHECK(std::includes(us.begin(), us.end(), s.begin(), s.end()));
    for (const auto& x : carrier(a)) {
      CHECK(ds.contains(x) == in_downset(x, s));
      CHECK(us.contains(x) == in_upset(x, s));
    }
  }
}

TEST_CASE("inf and sup agree with a fold") {
  std::mt19937_64 rng(13);
  Algebra a({"p", "q", "r", "s"});
  for (int i = 0; i < 50; ++i) {
    std::vector<Element> xs;
    for (int j = 0; j < 4; ++j) xs.push_back(random_element(a, rng));
    auto m = a.top();
    auto j = a.bottom();
    for (const auto& x : xs) {
      m = m & x;
      j = j | x;
    }
    ElementSet s(xs.begin(), xs.end());
    CHECK(inf_set(a, s) == m);
    CHECK(sup_set(a, s) == j);
  }
}

TEST_CASE("eta is a Boolean isomorphism onto atom sets") {
  Algebra a({"p", "q", "r"});
  auto all = carrier(a);
  std::set<ElementSet> images;
  for (const auto& x : all) {
    images.insert(eta(x));
    CHECK(sup_set(a, eta(x)) == x);
    for (const auto& y : all) {
      ElementSet both;
      auto ex = eta(x);
      auto ey = eta(y);
      std::set_intersection(ex.begin(), ex.end(), ey.begin(), ey.end(),
                            std::inserter(both, both.end()));
      CHECK(eta(x & y) == both);
    }
  }
  CHECK(images.size() == all.size());
}

TEST_CASE("cofactors and dependence") {
  Algebra a({"p", "q", "r", "s", "t", "u", "v", "w"});
  auto f = (a.prop("p") & a.prop("w")) | a.prop("u");
  CHECK(depends_on(f, 0));
  CHECK(depends_on(f, 7));
  CHECK_FALSE(depends_on(f, 1));
  CHECK(cofactor(f, 7, true) == (a.prop("p") | a.prop("u")));
  CHECK(cofactor(f, 7, false) == a.prop("u"));
  CHECK(cofactor(f, 0, false) == a.prop("u"));
}

TEST_CASE("generated aspect spaces") {
  Algebra a({"aCostH", "bCostH", "aP", "bP"});
  auto sub = AspectSpace::generated(a, {a.prop("aCostH"), a.prop("aP")});
  CHECK(sub.block_count() == 4);
  CHECK(sub.contains(~a.prop("aP") & (a.prop("aCostH") | ~a.prop("aP"))));
  CHECK_FALSE(sub.contains(a.prop("bP")));
  CHECK(sub.is_subalgebra());
  auto full = AspectSpace::all(a);
  CHECK_FALSE(sub.missing_from(full));
  auto gap = full.missing_from(sub);
  REQUIRE(gap);
  CHECK_FALSE(sub.contains(*gap));
  auto listed = AspectSpace::listed(*sub.enumerate());
  CHECK(listed.members().size() == 16);
  CHECK(listed.is_subalgebra());
  CHECK_FALSE(listed.missing_from(sub));
  CHECK_FALSE(sub.missing_from(listed));
  CHECK(full.missing_from(listed));
}

TEST_CASE("subalgebra generated by a non-prop element") {
  Algebra a({"x", "y"});
  auto g = a.prop("x") | a.prop("y");
  auto sub = AspectSpace::generated(a, {g});
  CHECK(sub.block_count() == 2);
  CHECK(*sub.enumerate() == ElementSet{a.bottom(), a.top(), g, ~g});
  CHECK(sub.contains(~g));
  CHECK_FALSE(sub.contains(a.prop("x")));
  auto by_x = AspectSpace::generated(a, {a.prop("x")});
  CHECK(by_x.missing_from(sub));
  CHECK(sub.missing_from(AspectSpace::all(a)) == std::nullopt);
}
