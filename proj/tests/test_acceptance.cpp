// Acceptance battery: one line per criterion, nonzero exit when any fails.
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wp/certify.hpp"
#include "wp/genprob.hpp"
#include "wp/lattice.hpp"
#include "wp/semidirect.hpp"
#include "wp/tower.hpp"

using namespace wp;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok) {
  std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void guarded(int criterion, const std::string& what, const std::function<bool()>& body) {
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("      (criterion %d threw: %s)\n", criterion, e.what());
  }
  report(criterion, what, ok);
}

PermGroup a5() {
  return PermGroup(5, {Permutation::from_cycles("(0 1 2)", 5),
                       Permutation::from_cycles("(0 1 2 3 4)", 5)});
}

GroupTable table_of(const PermGroup& g, std::size_t cap = 8192) {
  return GroupTable::from_perm_group(g, cap);
}

Subgroup node_subgroup(const SubgroupLattice& lat, std::size_t i) {
  const auto& nd = lat.nodes()[i];
  return Subgroup{nd.elems, nd.bits, nd.gens};
}

}  // namespace

int main() {
  // Shared fixtures.
  GroupTable a5t = table_of(a5());
  SubgroupLattice a5lat = SubgroupLattice::build(a5t, 60);
  Semidirect a5sq(SemidirectSpec::make(PermGroup(2, {}), {{0}, {1}}, {a5(), a5()}));
  const GroupTable& sqt = a5sq.table();
  SubgroupLattice sqlat = SubgroupLattice::build(sqt, 3600);

  guarded(1, "p2(A_5) = 19/30 by exhaustion and by Moebius inversion", [&] {
    Rat expected(19, 30);
    return pk_exact_exhaustive(a5t, 2) == expected && a5lat.pk_mobius(2) == expected;
  });

  guarded(2, "relative bound p_k(Y) >= (1 - zeta_{Y|X}(k-1)) p_k(X) on the surjection battery",
          [&] {
            struct Surjection {
              const char* name;
              GroupTable y;
              SubgroupLattice* ylat = nullptr;
            };
            // Enumerate (Y, N) with N normal: each quotient map is a surjection.
            std::vector<std::pair<const char*, GroupTable>> groups;
            groups.emplace_back("S_3", table_of(PermGroup(
                                           3, {Permutation::from_cycles("(0 1)", 3),
                                               Permutation::from_cycles("(0 1 2)", 3)})));
            groups.emplace_back("C2xC2", table_of(PermGroup(
                                             4, {Permutation::from_cycles("(0 1)(2 3)", 4),
                                                 Permutation::from_cycles("(0 2)(1 3)", 4)})));
            groups.emplace_back("A_4", table_of(PermGroup(
                                           4, {Permutation::from_cycles("(0 1 2)", 4),
                                               Permutation::from_cycles("(0 1)(2 3)", 4)})));
            groups.emplace_back("C_6", table_of(PermGroup(
                                           6, {Permutation::from_cycles("(0 1 2 3 4 5)", 6)})));

            int checked = 0;
            bool all = true;
            auto battery = [&](const GroupTable& y, const SubgroupLattice& ylat) {
              for (std::size_t i = 0; i < ylat.nodes().size(); ++i) {
                Subgroup n = node_subgroup(ylat, i);
                if (!is_normal(y, n) || n.elems.size() == y.size()) continue;
                Quotient q = quotient_by(y, n);
                auto xlat = SubgroupLattice::build(*q.table, q.table->size());
                for (unsigned k = 2; k <= 3; ++k) {
                  RelativeBound rb = relative_pk_bound(ylat, xlat, q.hom(y), k);
                  all = all && rb.holds;
                }
                ++checked;
              }
            };
            for (auto& [name, y] : groups) {
              auto ylat = SubgroupLattice::build(y, y.size());
              battery(y, ylat);
            }
            // A_5 -> 1 and A_5 x A_5 -> A_5 (both projections).
            battery(a5t, a5lat);
            for (std::size_t i = 0; i < sqlat.nodes().size(); ++i) {
              Subgroup n = node_subgroup(sqlat, i);
              std::size_t sz = n.elems.size();
              if (sz != 60 || !is_normal(sqt, n)) continue;
              Quotient q = quotient_by(sqt, n);
              auto xlat = SubgroupLattice::build(*q.table, q.table->size());
              for (unsigned k = 2; k <= 3; ++k)
                all = all && relative_pk_bound(sqlat, xlat, q.hom(sqt), k).holds;
              ++checked;
            }
            std::printf("      (%d surjections checked)\n", checked);
            return all && checked >= 10;
          });

  guarded(3, "zeta_{A_5|trivial}(1) = 7/15 from maximal classes of index 5, 6, 10", [&] {
    ZetaValue z = zeta_all_maximal(a5lat, 1);
    std::multiset<std::string> idx;
    for (const auto& t : z.terms) idx.insert(t.index.str());
    return z.total == Rat(7, 15) && idx == std::multiset<std::string>{"10", "5", "6"};
  });

  guarded(4, "chain order of L_3 over (A_5, 5) equals 60^31", [&] {
    TowerSpec spec = TowerSpec::make(a5());
    return build_level(spec, 3).order() == int_pow(Int(60), 31);
  });

  guarded(5, "product rule and intro action formula on 10^4 random pairs", [&] {
    TowerSpec spec = TowerSpec::make(a5());
    RngStream rng(2024, 0);
    for (int i = 0; i < 10000; ++i) {
      int level = 1 + (int)(rng.below(3));
      WreathElement a = WreathElement::random(spec, level, rng);
      WreathElement b = WreathElement::random(spec, level, rng);
      WreathElement ab = a.mult(b);
      if (ab.to_permutation() != a.to_permutation() * b.to_permutation()) return false;
      if (level >= 2) {
        // (x,f)(v,j) = (x(v), f(v)j) must agree with the flat permutation
        // under the word encoding, on every point.
        Permutation flat = a.to_permutation();
        int leaves = 1;
        for (int m = 1; m < level; ++m) leaves *= 5;
        for (int v = 0; v < leaves; ++v)
          for (int j = 0; j < 5; ++j) {
            auto [tv, tj] = a.act(decode_word(v, 5, level - 1), j);
            if (flat(v * 5 + j) != encode_word(tv, 5) * 5 + tj) return false;
          }
      }
    }
    return true;
  });

  guarded(6, "necessity witnesses verified on 10^3 random pairs and surjective", [&] {
    PermGroup s3(3, {Permutation::from_cycles("(0 1)", 3),
                     Permutation::from_cycles("(0 1 2)", 3)});
    Verdict v1 = decide(TowerSpec::make(s3), 1000, 7);
    if (v1.yes || !v1.abelian_witness) return false;
    const auto& w1 = *v1.abelian_witness;
    if (!w1.multiplicative || !w1.surjective || w1.pairs_checked != 1000) return false;

    PermGroup a5f6(6, {Permutation::from_cycles("(0 1 2)", 6),
                       Permutation::from_cycles("(0 1 2 3 4)", 6)});
    Verdict v2 = decide(TowerSpec::make(a5f6), 1000, 7);
    if (v2.yes || !v2.fixed_point) return false;
    const auto& w2 = *v2.fixed_point;
    return w2.multiplicative && w2.fixed_point == 5 && w2.pairs_checked == 1000;
  });

  guarded(7, "decision fixtures: YES for (A_5,5), A_6; NO for (C_2,2), S_3, PSL(2,5)", [&] {
    if (!decide(TowerSpec::make(a5()), 64).yes) return false;
    PermGroup a6(6, {Permutation::from_cycles("(0 1 2)", 6),
                     Permutation::from_cycles("(1 2 3 4 5)", 6)});
    if (!decide_universal(a6, 64).yes) return false;
    PermGroup c2(2, {Permutation::from_cycles("(0 1)", 2)});
    Verdict vc2 = decide(TowerSpec::make(c2), 64);
    if (vc2.yes || !vc2.abelian_witness) return false;
    PermGroup s3(3, {Permutation::from_cycles("(0 1)", 3),
                     Permutation::from_cycles("(0 1 2)", 3)});
    if (decide(TowerSpec::make(s3), 64).yes) return false;
    PermGroup psl(6, {Permutation::from_cycles("(0 1 2 3 4)", 6),
                      Permutation::from_cycles("(0 5)(1 4)", 6)});
    Verdict vp = decide_universal(psl, 64);
    return !vp.yes && vp.abelian_witness.has_value();
  });

  guarded(8, "diagonal of A_5 x A_5 maximal, graph_iso, exactly 2 = |Omega_1||Out(A_5)| classes",
          [&] {
            PermGroup base = a5();
            std::vector<elem_t> dgens;
            for (const auto& g : base.generators()) {
              std::vector<int> img(10);
              for (int p = 0; p < 5; ++p) {
                img[(std::size_t)p] = g(p);
                img[(std::size_t)(5 + p)] = 5 + g(p);
              }
              auto idx = sqt.index_of(Permutation(std::move(img)));
              if (!idx) return false;
              dgens.push_back(*idx);
            }
            Subgroup diag = subgroup_generated(sqt, dgens);
            SubgroupReport r = classify_maximal(a5sq, diag);
            if (!(r.maximal_checked && r.maximal && r.case_tag == "graph_iso")) return false;
            GraphIsoCount c = count_graph_iso_classes(a5sq, 20000);
            return c.count == 2 && c.bound == 2 && c.within_bound;
          });

  guarded(9, "subdiagonal index |T|^sum(|A|-1) on 5 partitions, size-1 blocks rejected", [&] {
    PermGroup x1(1, {});
    auto run = [&](int r, std::vector<std::vector<int>> blocks) {
      std::vector<Permutation> twists((std::size_t)r, Permutation::identity(5));
      return construct_subdiagonal(SubdiagonalSpec{x1, a5(), r, std::move(blocks), twists});
    };
    std::vector<std::pair<std::vector<std::vector<int>>, int>> fixtures = {
        {{{0, 1}}, 2},         {{{0, 1, 2}}, 3},          {{{0, 1}, {2, 3}}, 4},
        {{{0, 1}, {2, 3, 4}}, 5}, {{{0, 1, 2}, {3, 4, 5}}, 6},
    };
    for (auto& [blocks, r] : fixtures) {
      Int merged = 0;
      for (const auto& b : blocks) merged += Int(b.size()) - 1;
      SubdiagonalResult res = run(r, blocks);
      if (res.index != res.expected_index) return false;
      if (res.expected_index != int_pow(Int(60), merged.convert_to<unsigned long>()))
        return false;
    }
    try {
      run(2, {{0}, {1}});
      return false;
    } catch (const input_error&) {
      return true;
    }
  });

  guarded(10, "partition count bound (2|Omega|)^(r-1) a^r for r <= 3, |Omega| <= 4", [&] {
    std::vector<PermGroup> xs;
    xs.emplace_back(2, std::vector<Permutation>{Permutation::from_cycles("(0 1)", 2)});
    xs.emplace_back(3, std::vector<Permutation>{Permutation::from_cycles("(0 1 2)", 3)});
    xs.emplace_back(3, std::vector<Permutation>{Permutation::from_cycles("(0 1)", 3),
                                                Permutation::from_cycles("(0 1 2)", 3)});
    xs.emplace_back(4, std::vector<Permutation>{Permutation::from_cycles("(0 1 2 3)", 4)});
    xs.emplace_back(4, std::vector<Permutation>{Permutation::from_cycles("(0 1 2 3)", 4),
                                                Permutation::from_cycles("(1 3)", 4)});
    xs.emplace_back(4, std::vector<Permutation>{Permutation::from_cycles("(0 1)(2 3)", 4),
                                                Permutation::from_cycles("(0 2)(1 3)", 4)});
    for (const auto& x : xs)
      for (int r = 1; r <= 3; ++r) {
        PartitionCount pc = count_invariant_partitions(x, r);
        if (!pc.within_bound) return false;
      }
    return true;
  });

  guarded(11, "Wilson coverage >= 90/100 and MC p2(L_2) <= p2(L_1) + 3 sigma", [&] {
    Rat truth(19, 30);
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      PkResult r = pk_montecarlo(a5(), 2, 10000, seed);
      if (r.low <= truth && truth <= r.high) ++covered;
    }
    std::printf("      (%d/100 intervals cover 19/30)\n", covered);
    if (covered < 90) return false;
    TowerSpec spec = TowerSpec::make(a5());
    PermGroup l2 = build_level(spec, 2);
    PkResult r1 = pk_montecarlo(a5(), 2, 10000, 424242);
    PkResult r2 = pk_montecarlo(l2, 2, 10000, 424242);
    // 3 sigma of the difference, bounded by the widest case p(1-p) <= 1/4
    // for each estimate: sigma <= sqrt(1/4/n + 1/4/n).
    Rat sigma2 = Rat(1, 4 * 10000) + Rat(1, 4 * 10000);
    Rat sigma = sqrt_upper(sigma2);
    return r2.value <= r1.value + Rat(3) * sigma;
  });

  guarded(12, "end-to-end certificate for (A_5, 5): consistent flags, positive exact bound",
          [&] {
            std::map<std::string, Int> over = {{"C7", int_pow(Int(10), 12)}, {"K", Int(1000)}};
            Certificate cert = certified_k(TowerSpec::make(a5()), over);
            if (!cert.summable || !cert.positive) return false;
            if (cert.table.empty() || !cert.table[0].below_one) return false;
            for (std::size_t n = 1; n < cert.table.size(); ++n)
              if (cert.table[n].e_total <= cert.table[n - 1].e_total) return false;
            if (cert.consts.provenance.at("C7") != "user-supplied") return false;
            if (cert.consts.provenance.at("C1") != "computed-exact") return false;
            std::vector<Permutation> tuple;
            for (const auto& w : cert.k2_witness) tuple.push_back(Permutation::from_cycles(w, 5));
            if (tuple.empty() || StabilizerChain::build(5, tuple).order() != 60) return false;
            if (!(cert.lower_bound > 0)) return false;
            std::printf("      (k = %s, k1 = %s, k2 = %s)\n", cert.k.str().c_str(),
                        cert.k1.str().c_str(), cert.k2.str().c_str());
            return cert.k == std::max(cert.k1, cert.k2) &&
                   cert.lower_bound == (Rat(1) - cert.bound_sum) * cert.pk_base;
          });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
