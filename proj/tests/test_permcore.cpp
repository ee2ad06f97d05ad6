#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "wp/permgroup.hpp"

using namespace wp;

namespace {

PermGroup a5() {
  return PermGroup(5, {Permutation::from_cycles("(0 1 2)", 5),
                       Permutation::from_cycles("(0 1 2 3 4)", 5)});
}

PermGroup s5() {
  return PermGroup(5, {Permutation::from_cycles("(0 1)", 5),
                       Permutation::from_cycles("(0 1 2 3 4)", 5)});
}

// Brute-force order by closure under multiplication.
std::size_t brute_order(const PermGroup& g) {
  std::set<Permutation> seen{Permutation::identity(g.degree())};
  std::vector<Permutation> queue(seen.begin(), seen.end());
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& s : g.generators()) {
      Permutation p = s * queue[i];
      if (seen.insert(p).second) queue.push_back(p);
    }
  return seen.size();
}

}  // namespace

TEST_CASE("cycle notation round trip") {
  Permutation p = Permutation::from_cycles("(0 1 2 3 4)(5 6)", 8);
  CHECK(p(0) == 1);
  CHECK(p(4) == 0);
  CHECK(p(5) == 6);
  CHECK(p(7) == 7);
  CHECK(Permutation::from_cycles(p.to_cycles(), 8) == p);
  CHECK(Permutation::identity(4).to_cycles() == "()");
  CHECK_THROWS_AS(Permutation::from_cycles("(0 1 9)", 5), input_error);
  CHECK_THROWS_AS(Permutation::from_cycles("(0 0)", 5), input_error);
}

TEST_CASE("composition is function composition") {
  Permutation a = Permutation::from_cycles("(0 1)", 3);
  Permutation b = Permutation::from_cycles("(1 2)", 3);
  // (a*b)(p) = a(b(p))
  for (int p = 0; p < 3; ++p) CHECK((a * b)(p) == a(b(p)));
  CHECK((a * a.inverse()).is_identity());
  Permutation g = Permutation::from_cycles("(0 2 1)", 3);
  CHECK(a.conjugated_by(g) == g * a * g.inverse());
}

TEST_CASE("chain order matches brute force on small groups") {
  struct Fixture {
    int degree;
    std::vector<std::string> gens;
  };
  std::vector<Fixture> fixtures = {
      {3, {"(0 1)", "(0 1 2)"}},                 // S_3
      {4, {"(0 1)(2 3)", "(0 2)(1 3)"}},         // V_4
      {4, {"(0 1 2 3)", "(0 1)"}},               // S_4
      {4, {"(0 1 2)", "(0 1)(2 3)"}},            // A_4
      {6, {"(0 1 2 3 4 5)"}},                    // C_6
      {7, {"(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"}} // F_21
  };
  for (const auto& f : fixtures) {
    std::vector<Permutation> gens;
    for (const auto& c : f.gens) gens.push_back(Permutation::from_cycles(c, f.degree));
    PermGroup g(f.degree, gens);
    CHECK(g.order() == Int(brute_order(g)));
  }
}

TEST_CASE("classic orders") {
  CHECK(a5().order() == 60);
  CHECK(s5().order() == 120);
  PermGroup psl(6, {Permutation::from_cycles("(0 1 2 3 4)", 6),
                    Permutation::from_cycles("(0 5)(1 4)", 6)});
  CHECK(psl.order() == 60);  // PSL(2,5) on 6 points
  PermGroup a6(6, {Permutation::from_cycles("(0 1 2)", 6),
                   Permutation::from_cycles("(1 2 3 4 5)", 6)});
  CHECK(a6.order() == 360);
  PermGroup trivial(4, {});
  CHECK(trivial.order() == 1);
}

TEST_CASE("membership") {
  PermGroup g = a5();
  CHECK(g.contains(Permutation::from_cycles("(0 1)(2 3)", 5)));
  CHECK(g.contains(Permutation::identity(5)));
  CHECK_FALSE(g.contains(Permutation::from_cycles("(0 1)", 5)));  // odd
  CHECK(s5().contains(Permutation::from_cycles("(0 1)", 5)));
}

TEST_CASE("random elements are members and spread out") {
  PermGroup g = s5();
  RngStream rng(42, 0);
  std::map<Permutation, int> hits;
  for (int i = 0; i < 2000; ++i) {
    Permutation x = g.chain().random_element(rng);
    CHECK(g.contains(x));
    ++hits[x];
  }
  CHECK(hits.size() > 100);  // 120 elements; near-uniform sampling sees most
}

TEST_CASE("orbits") {
  PermGroup g(7, {Permutation::from_cycles("(0 1 2)", 7), Permutation::from_cycles("(3 4)", 7)});
  auto orbs = g.orbits();
  REQUIRE(orbs.size() == 4);
  CHECK(orbs[0] == std::vector<int>{0, 1, 2});
  CHECK(orbs[1] == std::vector<int>{3, 4});
  CHECK(orbs[2] == std::vector<int>{5});
  CHECK(orbs[3] == std::vector<int>{6});
}

TEST_CASE("derived subgroup and perfectness") {
  PermGroup s4(4, {Permutation::from_cycles("(0 1 2 3)", 4), Permutation::from_cycles("(0 1)", 4)});
  CHECK(s4.derived_subgroup().order() == 12);  // A_4
  PermGroup s3(3, {Permutation::from_cycles("(0 1)", 3), Permutation::from_cycles("(0 1 2)", 3)});
  CHECK(s3.derived_subgroup().order() == 3);
  CHECK_FALSE(s3.is_perfect());
  CHECK(a5().is_perfect());
  CHECK_FALSE(s5().is_perfect());
  CHECK(PermGroup(3, {}).is_perfect());
}

TEST_CASE("point stabilizer") {
  PermGroup g = a5();
  PermGroup st = g.point_stabilizer(0);
  CHECK(st.order() == 12);
  for (const auto& s : st.generators()) CHECK(s(0) == 0);
  PermGroup psl(6, {Permutation::from_cycles("(0 1 2 3 4)", 6),
                    Permutation::from_cycles("(0 5)(1 4)", 6)});
  CHECK(psl.point_stabilizer(0).order() == 10);
}

TEST_CASE("restriction to an invariant set") {
  PermGroup g(7, {Permutation::from_cycles("(0 1 2)(3 4)", 7)});
  PermGroup r = g.restricted_to({3, 4, 5});
  CHECK(r.degree() == 3);
  CHECK(r.order() == 2);
  CHECK_THROWS_AS(g.restricted_to({0, 1}), input_error);
}

TEST_CASE("invariant partitions") {
  // A_5 is primitive on 5 points: only the two trivial partitions.
  std::vector<int> dom = {0, 1, 2, 3, 4};
  CHECK(a5().invariant_partitions(dom).size() == 2);
  // C_4 = <(0 1 2 3)>: trivial ones plus {02|13}.
  PermGroup c4(4, {Permutation::from_cycles("(0 1 2 3)", 4)});
  CHECK(c4.invariant_partitions({0, 1, 2, 3}).size() == 3);
  // D_4 = <(0 1 2 3),(1 3)>: adds {01|23}-type pairings kept by the flip?
  PermGroup d4(4, {Permutation::from_cycles("(0 1 2 3)", 4), Permutation::from_cycles("(1 3)", 4)});
  CHECK(d4.invariant_partitions({0, 1, 2, 3}).size() == 3);
  CHECK_THROWS_AS(a5().invariant_partitions(dom, 3), cap_error);
}

TEST_CASE("chain rebuild from parts") {
  PermGroup g = s5();
  const StabilizerChain& c = g.chain();
  std::vector<ChainLevel> parts = c.levels();
  StabilizerChain rebuilt = StabilizerChain::from_parts(g.degree(), parts);
  CHECK(rebuilt.order() == c.order());
  CHECK(rebuilt.base() == c.base());
  for (const auto& gen : g.generators()) CHECK(rebuilt.contains(gen));
  RngStream rng(7, 0);
  for (int i = 0; i < 100; ++i) CHECK(c.contains(rebuilt.random_element(rng)));
}

TEST_CASE("chain base hint is honored") {
  StabilizerChain c = StabilizerChain::build_with_base(5, a5().generators(), {3});
  REQUIRE_FALSE(c.levels().empty());
  CHECK(c.levels()[0].base_point == 3);
  CHECK(c.order() == 60);
}
