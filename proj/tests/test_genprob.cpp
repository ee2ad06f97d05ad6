#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wp/genprob.hpp"
#include "wp/tower.hpp"

using namespace wp;

namespace {

GroupTable table_of(int degree, const std::vector<std::string>& cycles) {
  std::vector<Permutation> gens;
  for (const auto& c : cycles) gens.push_back(Permutation::from_cycles(c, degree));
  return GroupTable::from_perm_group(PermGroup(degree, std::move(gens)));
}

PermGroup a5() {
  return PermGroup(5, {Permutation::from_cycles("(0 1 2)", 5),
                       Permutation::from_cycles("(0 1 2 3 4)", 5)});
}

}  // namespace

TEST_CASE("wilson interval basics") {
  auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo > 0);
  CHECK(hi < 1);
  CHECK(lo < Rat(1, 2));
  CHECK(hi > Rat(1, 2));
  auto [l0, h0] = wilson_interval(0, 100);
  CHECK(l0 == 0);
  CHECK(h0 < Rat(1, 10));
  auto [l1, h1] = wilson_interval(100, 100);
  CHECK(h1 == 1);
  CHECK(l1 > Rat(9, 10));
  CHECK_THROWS_AS(wilson_interval(5, 0), input_error);
  CHECK_THROWS_AS(wilson_interval(5, 4), input_error);
}

TEST_CASE("exhaustive pk on cyclic groups matches closed form") {
  GroupTable c2 = table_of(2, {"(0 1)"});
  CHECK(pk_exact_exhaustive(c2, 1) == Rat(1, 2));
  CHECK(pk_exact_exhaustive(c2, 3) == Rat(7, 8));
  GroupTable c6 = table_of(6, {"(0 1 2 3 4 5)"});
  CHECK(pk_exact_exhaustive(c6, 2) == Rat(3, 4) * Rat(8, 9));
}

TEST_CASE("exhaustive pk agrees with mobius pk") {
  struct Fixture {
    int degree;
    std::vector<std::string> gens;
  };
  std::vector<Fixture> fixtures = {
      {3, {"(0 1)", "(0 1 2)"}},          // S_3
      {4, {"(0 1 2)", "(0 1)(2 3)"}},     // A_4
      {4, {"(0 1 2 3)", "(1 3)"}},        // D_4
      {4, {"(0 1)(2 3)", "(0 2)(1 3)"}},  // V_4
      {6, {"(0 1 2 3 4 5)"}},             // C_6
  };
  for (const auto& f : fixtures) {
    GroupTable t = table_of(f.degree, f.gens);
    auto lat = SubgroupLattice::build(t, t.size());
    for (unsigned k = 1; k <= 3; ++k) CHECK(pk_exact_exhaustive(t, k) == lat.pk_mobius(k));
  }
}

TEST_CASE("p2 of A_5 both ways") {
  GroupTable t = table_of(5, {"(0 1 2)", "(0 1 2 3 4)"});
  auto lat = SubgroupLattice::build(t, 60);
  Rat expected(19, 30);
  CHECK(pk_exact_exhaustive(t, 2) == expected);
  CHECK(lat.pk_mobius(2) == expected);
}

TEST_CASE("exhaustive cap") {
  GroupTable t = table_of(5, {"(0 1 2)", "(0 1 2 3 4)"});
  CHECK_THROWS_AS(pk_exact_exhaustive(t, 8, Int(1000000)), cap_error);
}

TEST_CASE("monte carlo interval brackets the exact value") {
  PkResult r = pk_montecarlo(a5(), 2, 20000, 12345);
  CHECK(r.mode == "montecarlo");
  CHECK(r.samples == 20000);
  CHECK(r.value == Rat((long)r.successes, 20000));
  CHECK(r.low <= Rat(19, 30));
  CHECK(r.high >= Rat(19, 30));
  // deterministic for a fixed seed
  PkResult r2 = pk_montecarlo(a5(), 2, 20000, 12345);
  CHECK(r2.successes == r.successes);
}

TEST_CASE("zeta values") {
  GroupTable t = table_of(5, {"(0 1 2)", "(0 1 2 3 4)"});
  auto lat = SubgroupLattice::build(t, 60);
  ZetaValue z = zeta_all_maximal(lat, 1);
  CHECK(z.total == Rat(1, 5) + Rat(1, 6) + Rat(1, 10));
  CHECK(z.terms.size() == 3);
  CHECK(zeta_all_maximal(lat, 2).total == Rat(1, 25) + Rat(1, 36) + Rat(1, 100));

  GroupTable s3 = table_of(3, {"(0 1)", "(0 1 2)"});
  auto lats3 = SubgroupLattice::build(s3, 6);
  CHECK(zeta_all_maximal(lats3, 1).total == Rat(1, 2) + Rat(1, 3));
}

TEST_CASE("relative zeta counts only subgroups covering the quotient") {
  // Y = S_3, X = C_2 via the sign map: C_3 (index 2) dies, the three C_2's
  // (index 3) survive.
  GroupTable y = table_of(3, {"(0 1)", "(0 1 2)"});
  auto laty = SubgroupLattice::build(y, 6);
  auto latnodes = laty.nodes();
  Subgroup c3;
  for (const auto& nd : latnodes)
    if (nd.elems.size() == 3) c3 = Subgroup{nd.elems, nd.bits, nd.gens};
  Quotient q = quotient_by(y, c3);
  ZetaValue z = zeta(laty, q.hom(y), 1);
  CHECK(z.total == Rat(1, 3));
}

TEST_CASE("relative pk bound holds exactly") {
  GroupTable y = table_of(3, {"(0 1)", "(0 1 2)"});
  auto laty = SubgroupLattice::build(y, 6);
  Subgroup c3;
  for (const auto& nd : laty.nodes())
    if (nd.elems.size() == 3) c3 = Subgroup{nd.elems, nd.bits, nd.gens};
  Quotient q = quotient_by(y, c3);
  auto latx = SubgroupLattice::build(*q.table, 2);
  for (unsigned k = 2; k <= 4; ++k) {
    RelativeBound rb = relative_pk_bound(laty, latx, q.hom(y), k);
    CHECK(rb.holds);
    CHECK(rb.slack >= 0);
    CHECK(rb.pk_y == laty.pk_mobius(k));
    CHECK(rb.pk_x == latx.pk_mobius(k));
  }
}

TEST_CASE("tail product bound") {
  TailBound tb = tail_product_bound({Rat(1, 4), Rat(1, 8)}, Rat(1, 16), Rat(19, 30));
  CHECK(tb.positive);
  CHECK(tb.value == Rat(3, 4) * Rat(7, 8) * Rat(15, 16) * Rat(19, 30));
  TailBound bad = tail_product_bound({Rat(3, 2)}, Rat(1, 16), Rat(19, 30));
  CHECK_FALSE(bad.positive);
}
