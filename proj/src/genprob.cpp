#include "wp/genprob.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "wp/errors.hpp"

namespace wp {

std::pair<Rat, Rat> wilson_interval(std::uint64_t successes, std::uint64_t samples) {
  require_input(samples > 0 && successes <= samples, "need successes <= samples, samples > 0");
  Rat x((long long)successes), n((long long)samples);
  Rat q(2401, 625);  // z^2 for z = 49/25
  Rat center = x + q / 2;
  Rat rad2 = q * (x * (n - x) / n + q / 4);
  Rat rad = sqrt_upper(rad2);
  Rat lo = (center - rad) / (n + q);
  Rat hi = (center + rad) / (n + q);
  if (lo < 0) lo = 0;
  if (hi > 1) hi = 1;
  return {lo, hi};
}

namespace {

// Depth-first over tuples, carrying the subgroup generated so far.  Prunes
// whole branches once the partial tuple already generates.
void pk_count(const GroupTable& G, const Subgroup& H, unsigned remaining, Int arity,
              Int& success) {
  if (H.elems.size() == G.size()) {
    success += int_pow(arity, remaining);
    return;
  }
  if (remaining == 0) return;
  for (std::size_t e = 0; e < G.size(); ++e) {
    if (H.contains((elem_t)e)) {
      pk_count(G, H, remaining - 1, arity, success);
    } else {
      Subgroup J = join_with_element(G, H, (elem_t)e);
      pk_count(G, J, remaining - 1, arity, success);
    }
  }
}

}  // namespace

Rat pk_exact_exhaustive(const GroupTable& G, unsigned k, const Int& tuple_cap) {
  require_input(k >= 1, "need k >= 1");
  Int arity((unsigned long long)G.size());
  Int tuples = int_pow(arity, k);
  require_cap(tuples <= tuple_cap, "tuple count |G|^k exceeds exhaustive cap");
  Int success = 0;
  pk_count(G, trivial_subgroup(G), k, arity, success);
  return Rat(success, tuples);
}

PkResult pk_montecarlo(const PermGroup& G, unsigned k, std::uint64_t samples,
                       std::uint64_t seed) {
  require_input(k >= 1 && samples > 0, "need k >= 1 and samples > 0");
  const StabilizerChain& chain = G.chain();
  Int order = chain.order();
  std::uint64_t hits = 0;
  std::vector<Permutation> tuple;
  for (std::uint64_t i = 0; i < samples; ++i) {
    RngStream rng(seed, i);  // per-sample stream: result independent of scheduling
    tuple.clear();
    for (unsigned j = 0; j < k; ++j) tuple.push_back(chain.random_element(rng));
    auto sub = StabilizerChain::build(G.degree(), tuple);
    if (sub.order() == order) ++hits;
  }
  PkResult res;
  res.mode = "montecarlo";
  res.samples = samples;
  res.successes = hits;
  res.value = Rat((long long)hits, (long long)samples);
  auto [lo, hi] = wilson_interval(hits, samples);
  res.low = lo;
  res.high = hi;
  return res;
}

namespace {

ZetaValue zeta_filtered(const SubgroupLattice& ly, unsigned s,
                        const std::function<bool(const std::vector<elem_t>&)>& admit) {
  ZetaValue z;
  z.total = 0;
  Int whole((unsigned long long)ly.nodes().back().elems.size());
  for (const auto& mc : ly.maximal_classes()) {
    const auto& node = ly.nodes()[(std::size_t)mc.rep_node];
    if (!admit(node.elems)) continue;
    ZetaTerm t;
    t.rep_node = mc.rep_node;
    t.index = mc.index;
    t.class_size = mc.class_size;
    t.term = rat_pow(Rat(1, mc.index), s);
    z.total += t.term;
    z.terms.push_back(std::move(t));
  }
  return z;
}

}  // namespace

ZetaValue zeta(const SubgroupLattice& ly, const GroupHom& pi, unsigned s) {
  std::size_t xsize = pi.dst->size();
  return zeta_filtered(ly, s, [&](const std::vector<elem_t>& elems) {
    std::set<elem_t> img;
    for (elem_t e : elems) img.insert(pi.map[e]);
    return img.size() == xsize;
  });
}

ZetaValue zeta_all_maximal(const SubgroupLattice& ly, unsigned s) {
  return zeta_filtered(ly, s, [](const std::vector<elem_t>&) { return true; });
}

RelativeBound relative_pk_bound(const SubgroupLattice& ly, const SubgroupLattice& lx,
                                const GroupHom& pi, unsigned k) {
  require_input(k >= 2, "need k >= 2");
  RelativeBound b;
  b.pk_y = ly.pk_mobius(k);
  b.pk_x = lx.pk_mobius(k);
  b.zeta_km1 = zeta(ly, pi, k - 1).total;
  b.rhs = (Rat(1) - b.zeta_km1) * b.pk_x;
  b.holds = b.pk_y >= b.rhs;
  b.slack = b.pk_y - b.rhs;
  return b;
}

TailBound tail_product_bound(const std::vector<Rat>& zetas, const Rat& tail_sum,
                             const Rat& pk_base) {
  TailBound t;
  if (tail_sum >= 1 || tail_sum < 0) {
    t.reason = "tail sum is not in [0, 1)";
    return t;
  }
  Rat prod = 1;
  for (const auto& z : zetas) {
    if (z >= 1 || z < 0) {
      t.reason = "a zeta value is not in [0, 1)";
      return t;
    }
    prod *= (Rat(1) - z);
  }
  t.value = prod * (Rat(1) - tail_sum) * pk_base;
  t.positive = t.value > 0;
  if (!t.positive) t.reason = "base probability is zero";
  return t;
}

}  // namespace wp
