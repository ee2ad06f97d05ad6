#include "wp/certify.hpp"

#include <algorithm>

#include "wp/errors.hpp"
#include "wp/genprob.hpp"
#include "wp/lattice.hpp"
#include "wp/semidirect.hpp"

namespace wp {

namespace {

Subgroup node_subgroup(const SubgroupLattice& lat, std::size_t node) {
  const auto& nd = lat.nodes()[node];
  return Subgroup{nd.elems, nd.bits, nd.gens};
}

std::vector<std::size_t> normal_node_indices(const GroupTable& t, const SubgroupLattice& lat) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lat.nodes().size(); ++i)
    if (is_normal(t, node_subgroup(lat, i))) out.push_back(i);
  return out;
}

bool is_simple(const GroupTable& t) {
  if (t.size() < 2) return false;
  auto lat = SubgroupLattice::build(t, t.size());
  return normal_node_indices(t, lat).size() == 2;
}

// N as a subgroup of an enumerated B; succeeds when N = T^r with T
// non-abelian simple, returning (|T|, r, |Out T|).
std::optional<Case2Entry> decompose_simple_power(const GroupTable& bt, const Subgroup& n) {
  std::vector<Permutation> ngens;
  for (elem_t g : n.gens) ngens.push_back(bt.perm(g));
  if (ngens.empty()) return std::nullopt;
  PermGroup np(ngens[0].degree(), ngens);
  GroupTable nt = GroupTable::from_perm_group(np, n.elems.size());
  auto lat = SubgroupLattice::build(nt, nt.size());
  auto normals = normal_node_indices(nt, lat);

  std::vector<std::size_t> minimal;
  for (std::size_t i : normals) {
    const auto& ni = lat.nodes()[i];
    if (ni.elems.size() < 2) continue;
    bool min = true;
    for (std::size_t j : normals) {
      const auto& nj = lat.nodes()[j];
      if (j == i || nj.elems.size() < 2 || nj.elems.size() >= ni.elems.size()) continue;
      if (nj.bits.is_subset_of(ni.bits)) min = false;
    }
    if (min) minimal.push_back(i);
  }
  if (minimal.empty()) return std::nullopt;

  std::size_t torder = lat.nodes()[minimal[0]].elems.size();
  std::vector<elem_t> all_gens;
  for (std::size_t i : minimal) {
    const auto& ni = lat.nodes()[i];
    if (ni.elems.size() != torder || nt.subset_is_abelian(ni.elems)) return std::nullopt;
    all_gens.insert(all_gens.end(), ni.gens.begin(), ni.gens.end());
  }
  int r = (int)minimal.size();
  if (int_pow(Int((unsigned long long)torder), (unsigned long)r) != Int(nt.size()))
    return std::nullopt;
  if (subgroup_generated(nt, all_gens).elems.size() != nt.size()) return std::nullopt;

  std::vector<Permutation> tgens;
  for (elem_t g : lat.nodes()[minimal[0]].gens) tgens.push_back(nt.perm(g));
  GroupTable tt = GroupTable::from_perm_group(PermGroup(tgens[0].degree(), tgens), torder);
  if (!is_simple(tt)) return std::nullopt;
  AutomorphismGroup aut = automorphisms(tt);

  Case2Entry e;
  e.b_order = Int(bt.size());
  e.n_order = Int(nt.size());
  e.out_t = aut.out_order;
  e.r = r;
  return e;
}

// W = L x| B^{D_j} realized on |D| + |D_j| * deg(B) points.
PermGroup build_w(const PermGroup& l, const std::vector<int>& dj, const GroupTable& bt) {
  int d = l.degree();
  int bdeg = bt.degree();
  int m = (int)dj.size();
  int deg = d + m * bdeg;
  std::vector<int> pos_of(d, -1);
  for (int i = 0; i < m; ++i) pos_of[(std::size_t)dj[(std::size_t)i]] = i;

  std::vector<Permutation> gens;
  for (const auto& g : l.generators()) {
    std::vector<int> img((std::size_t)deg);
    for (int p = 0; p < d; ++p) img[(std::size_t)p] = g(p);
    for (int i = 0; i < m; ++i) {
      int ti = pos_of[(std::size_t)g(dj[(std::size_t)i])];
      for (int q = 0; q < bdeg; ++q)
        img[(std::size_t)(d + i * bdeg + q)] = d + ti * bdeg + q;
    }
    gens.emplace_back(std::move(img));
  }
  for (int i = 0; i < m; ++i)
    for (elem_t bg : bt.generator_indices()) {
      Permutation b = bt.perm(bg);
      std::vector<int> img((std::size_t)deg);
      for (int p = 0; p < deg; ++p) img[(std::size_t)p] = p;
      for (int q = 0; q < bdeg; ++q) img[(std::size_t)(d + i * bdeg + q)] = d + i * bdeg + b(q);
      gens.emplace_back(std::move(img));
    }
  return PermGroup(deg, std::move(gens));
}

Int bl(const Int& x) { return Int(bit_length(x)); }  // x <= 2^bl(x), x >= 2^(bl(x)-1)

}  // namespace

Verdict decide(const TowerSpec& spec, std::size_t witness_pairs, std::uint64_t seed) {
  Verdict v;
  v.spec = std::make_shared<const TowerSpec>(spec);
  for (const auto& orb : v.spec->orbits) v.orbit_sizes.push_back(orb.size());
  bool perfect = v.spec->base.is_perfect();
  auto fixed = find_fixed_point(*v.spec);
  v.yes = perfect && !fixed.has_value();
  if (v.yes) {
    v.reasons.push_back("base group is perfect");
    v.reasons.push_back("every orbit has at least two points");
    return v;
  }
  if (!perfect) {
    v.abelian_witness = maybe_abelianization_witness(*v.spec, 1, 8192, witness_pairs, seed);
    v.reasons.push_back("base group is not perfect: abelianization of order " +
                        Int(v.abelian_witness->pi.table->size()).str() + " attached");
  }
  if (fixed) {
    v.fixed_point = fixed_point_witness(*v.spec, 1, *fixed, witness_pairs, seed);
    v.reasons.push_back("orbit of size 1 at point " + std::to_string(*fixed));
  }
  return v;
}

Verdict decide_universal(const PermGroup& f, std::size_t witness_pairs, std::uint64_t seed) {
  require_input(f.degree() >= 3, "need degree >= 3");
  PermGroup f1 = f.point_stabilizer(0);
  std::vector<int> rest;
  for (int p = 1; p < f.degree(); ++p) rest.push_back(p);
  Verdict v = decide(TowerSpec::make(f1.restricted_to(rest)), witness_pairs, seed);
  v.reasons.insert(v.reasons.begin(),
                   "criterion applied to the point stabilizer on the remaining " +
                       std::to_string(f.degree() - 1) + " points");
  return v;
}

ConstantsReport constants(const TowerSpec& spec, const std::map<std::string, Int>& overrides,
                          std::size_t table_cap, std::size_t w_cap) {
  Verdict v = decide(spec, 8);
  require_input(v.yes, "constants are defined only for towers passing the criterion");
  for (const auto& [key, val] : overrides) {
    require_input(key == "C1" || key == "C2" || key == "C3" || key == "C6" || key == "C7" ||
                      key == "C9" || key == "K",
                  "unknown override " + key);
    require_input(val >= 1, "override " + key + " must be >= 1");
  }

  ConstantsReport c;
  c.dsize = spec.dsize();
  c.ell = spec.ell();
  for (const auto& orb : spec.orbits) c.orbit_sizes.push_back(orb.size());

  auto over = [&](const std::string& key) -> std::optional<Int> {
    auto it = overrides.find(key);
    if (it == overrides.end()) return std::nullopt;
    return it->second;
  };
  auto tag = [&](const std::string& key, const char* how) { c.provenance[key] = how; };

  GroupTable lt = GroupTable::from_perm_group(spec.base, table_cap);
  auto llat = SubgroupLattice::build(lt, lt.size());
  auto lnormals = normal_node_indices(lt, llat);

  struct Q {
    Quotient q;
    bool simple;
  };
  std::vector<Q> quotients;
  for (std::size_t i : lnormals) {
    Quotient q = quotient_by(lt, node_subgroup(llat, i));
    bool simple = is_simple(*q.table);
    quotients.push_back({std::move(q), simple});
  }

  // C1, C2: simple quotients and their outer automorphism counts.
  if (auto o = over("C1")) {
    c.C1 = *o;
    tag("C1", "user-supplied");
  } else {
    c.C1 = 0;
    for (const auto& q : quotients)
      if (q.simple) ++c.C1;
    tag("C1", "computed-exact");
  }
  if (auto o = over("C2")) {
    c.C2 = *o;
    tag("C2", "user-supplied");
  } else {
    c.C2 = 1;
    for (const auto& q : quotients)
      if (q.simple) c.C2 = std::max(c.C2, automorphisms(*q.q.table).out_order);
    tag("C2", "computed-exact");
  }

  // C3: invariant partitions of each orbit.
  if (auto o = over("C3")) {
    c.C3 = *o;
    tag("C3", "user-supplied");
  } else {
    c.C3 = 1;
    for (const auto& orb : spec.orbits)
      c.C3 = std::max(c.C3, Int(spec.base.invariant_partitions(orb).size()));
    tag("C3", "computed-exact");
  }

  // C6: max subgroup count over quotients; C9: number of quotients.
  if (auto o = over("C6")) {
    c.C6 = *o;
    tag("C6", "user-supplied");
  } else {
    c.C6 = 1;
    for (const auto& q : quotients) {
      auto qlat = SubgroupLattice::build(*q.q.table, q.q.table->size());
      c.C6 = std::max(c.C6, Int(qlat.nodes().size()));
    }
    tag("C6", "computed-exact");
  }
  if (auto o = over("C9")) {
    c.C9 = *o;
    tag("C9", "user-supplied");
  } else {
    c.C9 = Int(quotients.size());
    tag("C9", "computed-exact");
  }

  // Case-2 data: every (quotient B, normal N = T^r) pair, exhaustively.
  for (const auto& q : quotients) {
    if (q.q.table->size() < 2) continue;
    auto blat = SubgroupLattice::build(*q.q.table, q.q.table->size());
    for (std::size_t i : normal_node_indices(*q.q.table, blat)) {
      Subgroup n = node_subgroup(blat, i);
      if (n.elems.size() < 2) continue;
      if (auto e = decompose_simple_power(*q.q.table, n)) c.case2.push_back(*e);
    }
  }

  // C7, K over every quotient B and orbit D_j; exhaustive only when every
  // L x| B^{D_j} fits under the cap.
  auto oc7 = over("C7");
  auto ok = over("K");
  if (oc7 && ok) {
    c.C7 = *oc7;
    c.K = *ok;
    tag("C7", "user-supplied");
    tag("K", "user-supplied");
  } else {
    Int c7 = 1, kk = 1;
    for (const auto& q : quotients)
      for (const auto& dj : spec.orbits) {
        Int worder = lt.size() * int_pow(Int(q.q.table->size()), dj.size());
        require_cap(worder <= Int(w_cap),
                    "constants C7/K need overrides: |L x| B^D_j| = " + worder.str() +
                        " exceeds the exhaustive cap");
        GroupTable wt = q.q.table->size() == 1
                            ? lt
                            : GroupTable::from_perm_group(build_w(spec.base, dj, *q.q.table),
                                                          w_cap);
        c7 = std::max(c7, hom_count(lt, wt));
        auto wlat = SubgroupLattice::build(wt, wt.size());
        Int nonab = 0;
        for (const auto& nd : wlat.nodes())
          if (!wt.subset_is_abelian(nd.elems)) ++nonab;
        kk = std::max(kk, nonab);
      }
    c.C7 = oc7 ? *oc7 : c7;
    c.K = ok ? *ok : kk;
    tag("C7", oc7 ? "user-supplied" : "computed-exact");
    tag("K", ok ? "user-supplied" : "computed-exact");
  }
  require_input(c.C7 >= 1 && c.K >= 1, "C7 and K must be >= 1");

  // C8 = ceil(C7^((K+1)/2)) * |D|^K, rounded up to stay a bound.
  require_cap(bl(c.C7) * (c.K + 1) + c.K * bl(Int(c.dsize)) <= 8000000,
              "C8 arithmetic too large; lower C7/K");
  unsigned long kul = c.K.convert_to<unsigned long>();
  c.C8 = isqrt_ceil(int_pow(c.C7, kul + 1)) * int_pow(Int(c.dsize), kul);
  tag("C8", "computed-bound");
  return c;
}

CaseBounds case_bounds(const TowerSpec& spec, const ConstantsReport& c, int n, unsigned k,
                       const Int& bit_cap) {
  require_input(n >= 1 && n <= 40 && k >= 1, "need n in [1,40] and k >= 1");
  (void)spec;
  Int exp2 = Int(1) << (unsigned)n;
  Int ell(c.ell), d(c.dsize);
  Int omax = int_pow(d, (unsigned long)n);

  Int size_est = Int(k) * exp2 + exp2 * bl(c.C8) + Int(k) * omax * 8 + omax * bl(c.C3);
  require_cap(size_est <= bit_cap, "exact case bounds too large at this (n, k)");

  CaseBounds b;
  b.n = n;
  b.k = k;
  Int den = Int(1) << (Int(k) * exp2).convert_to<unsigned>();
  b.case1 = Rat(c.C1 * c.C1 * c.C2 * int_pow(ell * ell * d, (unsigned long)n), den);
  b.case3 = Rat(c.C6 * int_pow(ell, (unsigned long)n), den);

  Rat q4 = Rat(c.C8, Int(1) << k);
  b.case4 = Rat(c.C9 * int_pow(ell, (unsigned long)n)) * rat_pow(q4, exp2.convert_to<unsigned long>());
  b.case4_convergent = c.C8 < (Int(1) << k);

  b.case2 = 0;
  b.case2_convergent = true;
  for (const auto& e : c.case2)
    if (int_pow(e.out_t, 2UL * (unsigned long)e.r) >= int_pow(e.n_order, (unsigned long)k))
      b.case2_convergent = false;
  // Enumerate orbit signatures exactly when feasible; otherwise use the
  // largest-term majorant at |O| = 2^n (valid in the convergent regime).
  Int sig_count = int_pow(ell, (unsigned long)n);
  auto term_at = [&](const Int& osize) {
    Rat sum = 0;
    unsigned long o = osize.convert_to<unsigned long>();
    for (const auto& e : c.case2) {
      unsigned long r = (unsigned long)e.r;
      Int pre = int_pow(2 * osize * osize, r - 1) * int_pow(c.C3, r * (unsigned long)n);
      Int num = int_pow(e.out_t, r * o);
      Int den2 = isqrt_floor(int_pow(e.n_order, (unsigned long)k * o));
      sum += Rat(pre * num, den2);
    }
    return sum;
  };
  if (sig_count <= 4096) {
    std::vector<std::size_t> idx((std::size_t)n, 0);
    for (;;) {
      Int osize = 1;
      for (int j = 0; j < n; ++j) osize *= Int(c.orbit_sizes[idx[(std::size_t)j]]);
      b.case2 += term_at(osize);
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == c.orbit_sizes.size()) idx[j++] = 0;
      if (j == idx.size()) break;
    }
  } else {
    b.case2 = Rat(sig_count) * term_at(exp2);
  }

  b.total = b.case1 + b.case2 + b.case3 + b.case4;
  b.total_lt_1 = b.total < 1;
  return b;
}

DyadicBounds dyadic_bounds(const ConstantsReport& c, int n, const Int& s) {
  require_input(n >= 1 && n <= 62 && s >= 1, "need n in [1,62] and s >= 1");
  DyadicBounds d;
  d.n = n;
  Int exp2 = Int(1) << (unsigned)n;
  Int ell(c.ell), dd(c.dsize);
  Int nn(n);

  d.e1 = s * exp2 - (2 * bl(c.C1) + bl(c.C2) + nn * (2 * bl(ell) + bl(dd)));
  d.e3 = s * exp2 - (bl(c.C6) + nn * bl(ell));
  d.e4 = s * exp2 - (bl(c.C9) + nn * bl(ell) + exp2 * bl(c.C8));

  std::vector<Int> es{d.e1, d.e3, d.e4};
  if (!c.case2.empty()) {
    Int e2;
    bool first = true;
    Int omax = int_pow(dd, (unsigned long)n);
    for (const auto& e : c.case2) {
      Int r(e.r);
      Int g = s * (bl(e.n_order) - 1) - 2 * r * bl(e.out_t);
      // Per-orbit factor <= 2^(-|O| g / 2); worst |O| depends on the sign.
      Int o = g > 0 ? exp2 : omax;
      Int a = (r - 1) * (1 + 2 * nn * bl(dd)) + r * nn * bl(c.C3);
      Int ee = (o * g) / 2 - a;
      if (first || ee < e2) e2 = ee;
      first = false;
    }
    d.e2 = e2 - nn * bl(ell) - bl(Int(c.case2.size()));
    es.push_back(d.e2);
  } else {
    d.e2 = s * exp2;  // case 2 contributes nothing
  }
  d.e_total = *std::min_element(es.begin(), es.end()) - 2;
  d.below_one = d.e_total >= 1;
  return d;
}

Certificate certified_k(const TowerSpec& spec, const std::map<std::string, Int>& overrides,
                        const CertifyOptions& opts) {
  Verdict v = decide(spec, 8);
  require_input(v.yes, "no certificate: the tower fails the finite-generation criterion");
  Certificate cert;
  cert.consts = constants(spec, overrides);
  cert.horizon = opts.horizon;
  const ConstantsReport& c = cert.consts;

  // Analytic starting exponent: C8 < 2^s and |Out T|^2r < |N|^s per entry.
  Int s = bl(c.C8);
  for (const auto& e : c.case2) {
    Int need = (2 * Int(e.r) * bl(e.out_t)) / (bl(e.n_order) - 1) + 1;
    s = std::max(s, need);
  }
  if (s < 1) s = 1;

  bool found = false;
  for (Int tries = 0; tries <= opts.s_search_limit; ++tries, ++s) {
    std::vector<DyadicBounds> table;
    for (int n = 1; n <= opts.horizon; ++n) table.push_back(dyadic_bounds(c, n, s));
    if (!table[0].below_one || table[0].e_total < 2) continue;
    bool summable = true;
    for (int n = 1; n < opts.horizon; ++n)
      if (table[(std::size_t)n].e_total < table[(std::size_t)n - 1].e_total + 1)
        summable = false;
    if (!summable) continue;
    cert.table = std::move(table);
    cert.summable = true;
    found = true;
    break;
  }
  require_cap(found, "no certificate exponent found within the search limit");
  cert.n1 = 1;
  cert.k1 = s + 1;
  // sum_{n>=1} bound_n <= 2^(1 - e_total(1)) < 1; clamp the exponent so the
  // rational stays small (weakening is sound).
  unsigned long e1 =
      std::min<unsigned long>(cert.table[0].e_total.convert_to<unsigned long>() - 1, 63);
  cert.bound_sum = Rat(1, Int(1) << e1);

  // k2: seeded tuple search on L_{n1} = L, verified by chain order.
  const PermGroup& l1 = spec.base;
  Int order = l1.order();
  cert.mc_seed = opts.seed;
  bool gen_found = false;
  for (unsigned kk = 2; kk <= opts.k2_max && !gen_found; ++kk) {
    for (std::uint64_t i = 0; i < opts.mc_budget; ++i) {
      RngStream rng(opts.seed, ((std::uint64_t)kk << 32) ^ i);
      std::vector<Permutation> tuple;
      for (unsigned j = 0; j < kk; ++j) tuple.push_back(l1.chain().random_element(rng));
      ++cert.mc_samples;
      if (StabilizerChain::build(l1.degree(), tuple).order() == order) {
        cert.k2 = kk;
        for (const auto& p : tuple) cert.k2_witness.push_back(p.to_cycles());
        gen_found = true;
        break;
      }
    }
  }
  require_cap(gen_found, "generator search exhausted its budget of " +
                             std::to_string(opts.mc_budget) + " samples per k up to k = " +
                             std::to_string(opts.k2_max));

  cert.k = std::max(cert.k1, cert.k2);
  GroupTable lt = GroupTable::from_perm_group(l1);
  auto lat = SubgroupLattice::build(lt, lt.size());
  cert.pk_base = lat.pk_mobius(cert.k.convert_to<unsigned>());
  cert.lower_bound = (Rat(1) - cert.bound_sum) * cert.pk_base;
  cert.positive = cert.lower_bound > 0;
  return cert;
}

SectionBound section_count_bound(const TowerSpec& spec, const std::vector<int>& signature,
                                 const ConstantsReport& c, const Int& bit_cap) {
  int n = (int)signature.size();
  require_input(n >= 1, "signature must be nonempty");
  std::vector<Int> dsig;
  for (int i : signature) {
    require_input(i >= 0 && i < c.ell, "orbit index out of range");
    dsig.push_back(Int(c.orbit_sizes[(std::size_t)i]));
  }
  (void)spec;

  SectionBound sb;
  sb.orbit_size = 1;
  for (const auto& dj : dsig) sb.orbit_size *= dj;
  require_cap(sb.orbit_size * bl(c.C8) <= bit_cap, "section bound too large for this signature");

  sb.recursion.push_back(c.C7);
  Int d(c.dsize);
  for (int j = 2; j <= n; ++j) {
    Int sprev = int_pow(d, (unsigned long)(j - 1));
    Int keff = std::min(c.K, sprev);
    unsigned long ke = keff.convert_to<unsigned long>();
    Int ff = 1;  // falling factorial |S_{j-1}| (|S_{j-1}|-1) ... = C(s,K) K!
    for (unsigned long i = 0; i < ke; ++i) ff *= (sprev - Int(i));
    Int a = int_pow(sb.recursion.back(), dsig[(std::size_t)j - 1].convert_to<unsigned long>()) *
            ff * int_pow(c.C7, ke);
    require_cap(bl(a) <= bit_cap, "section recursion too large for this signature");
    sb.recursion.push_back(std::move(a));
  }
  sb.closed_form = int_pow(c.C8, sb.orbit_size.convert_to<unsigned long>());
  sb.closed_dominates = sb.recursion.back() <= sb.closed_form;

  // alpha_n = sum_m (m) d_{m+2}..d_n, beta_n = sum of suffix products, with
  // the paper's bounds 4 d_3..d_n and 2 d_3..d_n.
  Int suffix = 1;  // d_3 ... d_n
  for (int j = 3; j <= n; ++j) suffix *= dsig[(std::size_t)j - 1];
  sb.alpha_exact = 0;
  sb.beta_exact = 0;
  if (n >= 2) {
    for (int t = 3; t <= n + 1; ++t) {
      Int prod = 1;
      for (int j = t; j <= n; ++j) prod *= dsig[(std::size_t)j - 1];
      sb.alpha_exact += Int(t - 2) * prod;
      sb.beta_exact += prod;
    }
  }
  sb.alpha_bound = 4 * suffix;
  sb.beta_bound = 2 * suffix;
  sb.alpha_ok = n < 2 || sb.alpha_exact <= sb.alpha_bound;
  sb.beta_ok = n < 2 || sb.beta_exact <= sb.beta_bound;
  return sb;
}

}  // namespace wp
