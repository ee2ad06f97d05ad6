#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wp/semidirect.hpp"

using namespace wp;

namespace {

PermGroup a5() {
  return PermGroup(5, {Permutation::from_cycles("(0 1 2)", 5),
                       Permutation::from_cycles("(0 1 2 3 4)", 5)});
}

// A_5 x A_5 as a semidirect product with trivial top group.
Semidirect a5_squared() {
  return Semidirect(SemidirectSpec::make(PermGroup(2, {}), {{0}, {1}}, {a5(), a5()}));
}

// A_5 wr C_2 = C_2 x| A_5^2 with the swap on top.
Semidirect a5_wr_c2() {
  PermGroup c2(2, {Permutation::from_cycles("(0 1)", 2)});
  return Semidirect(SemidirectSpec::make(c2, {{0, 1}}, {a5()}));
}

SdElement random_element(const Semidirect& Y, RngStream& rng) {
  const auto& spec = Y.spec();
  SdElement e = Y.x_only(spec.X.order() == 1 ? Permutation::identity(spec.X.degree())
                                             : spec.X.chain().random_element(rng));
  for (int i = 0; i < spec.t(); ++i)
    for (std::size_t pos = 0; pos < spec.omegas[(std::size_t)i].size(); ++pos)
      e = Y.mult(e, Y.leaf(i, (int)pos, spec.bases[(std::size_t)i].chain().random_element(rng)));
  return e;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(SemidirectSpec::make(PermGroup(2, {}), {{0, 1}}, {a5()}), input_error);
  PermGroup s3(3, {Permutation::from_cycles("(0 1)", 3), Permutation::from_cycles("(0 1 2)", 3)});
  // base must be perfect
  CHECK_THROWS_AS(SemidirectSpec::make(PermGroup(1, {}), {{0}}, {s3}), input_error);
  // omegas must cover the domain
  CHECK_THROWS_AS(SemidirectSpec::make(PermGroup(2, {}), {{0}}, {a5()}), input_error);
}

TEST_CASE("order and flat realization") {
  Semidirect Y = a5_squared();
  CHECK(Y.order() == 3600);
  CHECK(Y.perm_degree() == 10);
  CHECK(Y.as_perm_group().order() == 3600);
  Semidirect W = a5_wr_c2();
  CHECK(W.order() == 7200);
  CHECK(W.as_perm_group().order() == 7200);
}

TEST_CASE("structured product matches flat composition") {
  Semidirect Y = a5_wr_c2();
  RngStream rng(3, 0);
  for (int i = 0; i < 200; ++i) {
    SdElement a = random_element(Y, rng);
    SdElement b = random_element(Y, rng);
    CHECK(Y.to_permutation(Y.mult(a, b)) == Y.to_permutation(a) * Y.to_permutation(b));
  }
}

TEST_CASE("from_permutation round trip") {
  Semidirect Y = a5_wr_c2();
  RngStream rng(17, 0);
  for (int i = 0; i < 100; ++i) {
    SdElement a = random_element(Y, rng);
    Permutation p = Y.to_permutation(a);
    SdElement back = Y.from_permutation(p);
    CHECK(Y.to_permutation(back) == p);
  }
  CHECK_THROWS_AS(Y.from_permutation(Permutation::from_cycles("(0 5)", 10)), input_error);
}

TEST_CASE("diagonal of A_5 x A_5 is maximal of type graph_iso") {
  Semidirect Y = a5_squared();
  const GroupTable& t = Y.table();
  REQUIRE(t.size() == 3600);
  std::vector<elem_t> dgens;
  PermGroup base = a5();
  for (const auto& g : base.generators()) {
    std::vector<int> img(10);
    for (int p = 0; p < 5; ++p) {
      img[(std::size_t)p] = g(p);
      img[(std::size_t)(5 + p)] = 5 + g(p);
    }
    auto idx = t.index_of(Permutation(std::move(img)));
    REQUIRE(idx.has_value());
    dgens.push_back(*idx);
  }
  Subgroup diag = subgroup_generated(t, dgens);
  CHECK(diag.elems.size() == 60);
  SubgroupReport r = classify_maximal(Y, diag);
  CHECK(r.proper);
  CHECK(r.clean);
  CHECK(r.maximal_checked);
  CHECK(r.maximal);
  CHECK(r.case_tag == "graph_iso");
  CHECK(r.index == 60);
}

TEST_CASE("factor subgroup is not maximal") {
  Semidirect Y = a5_squared();
  const GroupTable& t = Y.table();
  std::vector<elem_t> gens;
  PermGroup base = a5();
  for (const auto& g : base.generators()) {
    std::vector<int> img(10);
    for (int p = 0; p < 5; ++p) img[(std::size_t)p] = g(p);
    for (int p = 5; p < 10; ++p) img[(std::size_t)p] = p;
    gens.push_back(*t.index_of(Permutation(std::move(img))));
  }
  Subgroup f1 = subgroup_generated(t, gens);
  CHECK(f1.elems.size() == 60);
  SubgroupReport r = classify_maximal(Y, f1);
  CHECK(r.proper);
  CHECK_FALSE(r.clean);  // contains a full factor core
  CHECK_FALSE(r.maximal);
}

TEST_CASE("constructed graph subgroups and class count") {
  Semidirect Y = a5_squared();
  const GroupTable& a5t = GroupTable::from_perm_group(a5());
  // identity isomorphism between the two copies
  GroupHom id{&a5t, &a5t, {}};
  id.map.resize(a5t.size());
  for (elem_t e = 0; e < a5t.size(); ++e) id.map[e] = e;
  SubgroupReport r = construct_graph_iso(Y, GraphIsoData{{0}, {id}});
  CHECK(r.maximal);
  CHECK(r.case_tag == "graph_iso");
  CHECK(r.index == 60);

  GraphIsoCount c = count_graph_iso_classes(Y, 20000);
  CHECK(c.count == 2);  // |Omega_1| * |Out(A_5)| attained
  CHECK(c.bound == 2);
  CHECK(c.within_bound);
}

TEST_CASE("subdiagonal index formula") {
  PermGroup x1(1, {});
  // r copies of a single point; partition blocks within {0..r-1}.
  auto run = [&](int r, std::vector<std::vector<int>> blocks) {
    std::vector<Permutation> twists((std::size_t)r, Permutation::identity(5));
    SubdiagonalSpec sd{x1, a5(), r, std::move(blocks), std::move(twists)};
    return construct_subdiagonal(sd);
  };
  SubdiagonalResult d2 = run(2, {{0, 1}});
  CHECK(d2.index == d2.expected_index);
  CHECK(d2.expected_index == 60);  // |T|^(2-1)
  SubdiagonalResult d3 = run(3, {{0, 1, 2}});
  CHECK(d3.index == d3.expected_index);
  CHECK(d3.expected_index == 3600);
  SubdiagonalResult d22 = run(4, {{0, 1}, {2, 3}});
  CHECK(d22.index == d22.expected_index);
  CHECK(d22.expected_index == 3600);
  SubdiagonalResult d23 = run(5, {{0, 1}, {2, 3, 4}});
  CHECK(d23.index == d23.expected_index);
  CHECK(d23.expected_index == 216000);
  // size-1 blocks rejected
  CHECK_THROWS_AS(run(2, {{0}, {1}}), input_error);
}

TEST_CASE("subdiagonal with twists") {
  // conjugating twist inside S_5 (odd permutation acts as an outer aut of A_5)
  SubdiagonalSpec sd{PermGroup(1, {}), a5(), 2, {{0, 1}},
                     {Permutation::identity(5), Permutation::from_cycles("(0 1)", 5)}};
  SubdiagonalResult r = construct_subdiagonal(sd);
  CHECK(r.index == r.expected_index);
  REQUIRE(r.report.has_value());
  CHECK(r.report->maximal);
}

TEST_CASE("section counts") {
  // Trivial X: only the trivial section.
  Semidirect Z(SemidirectSpec::make(PermGroup(1, {}), {{0}}, {a5()}));
  CHECK(count_sections(Z) == 1);

  // A_5 wr C_2: a section sends the swap to (swap, a, a^-1), one per a in A_5.
  Semidirect W = a5_wr_c2();
  Int sections = count_sections(W);
  const GroupTable& t = W.table();
  Permutation swap = Permutation::from_cycles("(0 1)", 2);
  Int brute = 0;
  for (elem_t e = 0; e < t.size(); ++e)
    if (W.pi_of(e) == swap && t.mul(e, e) == 0) ++brute;
  CHECK(sections == brute);
  CHECK(sections == 60);
}

TEST_CASE("invariant partition counts and bound") {
  // X = C_4 acting on Omega of size 4.
  PermGroup c4(4, {Permutation::from_cycles("(0 1 2 3)", 4)});
  for (int r = 1; r <= 3; ++r) {
    PartitionCount pc = count_invariant_partitions(c4, r);
    CHECK(pc.within_bound);
    CHECK(pc.exact >= 1);
  }
  // X = S_3 on 3 points.
  PermGroup s3(3, {Permutation::from_cycles("(0 1)", 3), Permutation::from_cycles("(0 1 2)", 3)});
  for (int r = 1; r <= 3; ++r) CHECK(count_invariant_partitions(s3, r).within_bound);
  CHECK_THROWS_AS(count_invariant_partitions(c4, 4), cap_error);
}
