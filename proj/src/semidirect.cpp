#include "wp/semidirect.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wp/errors.hpp"

namespace wp {

SemidirectSpec SemidirectSpec::make(PermGroup X, std::vector<std::vector<int>> omegas,
                                    std::vector<PermGroup> bases) {
  require_input(!omegas.empty() && omegas.size() == bases.size(),
                "need one base group per orbit set");
  std::vector<int> seen((std::size_t)X.degree(), 0);
  for (auto& om : omegas) {
    require_input(!om.empty(), "orbit sets must be nonempty");
    std::sort(om.begin(), om.end());
    for (int p : om) {
      require_input(p >= 0 && p < X.degree(), "orbit point out of range");
      require_input(!seen[(std::size_t)p]++, "orbit sets must be disjoint");
    }
    auto orb = X.orbit(om[0]);
    require_input(orb == om, "X must act transitively on each orbit set");
  }
  for (int p = 0; p < X.degree(); ++p)
    require_input(seen[(std::size_t)p] == 1, "orbit sets must cover the domain");
  for (const auto& b : bases) {
    require_input(b.order() > 1, "base groups must be nontrivial");
    require_input(b.is_perfect(), "base groups must be perfect");
  }
  return SemidirectSpec{std::move(X), std::move(omegas), std::move(bases)};
}

Semidirect::Semidirect(SemidirectSpec spec) : spec_(std::move(spec)) {
  omega_of_point_.assign((std::size_t)spec_.X.degree(), -1);
  pos_of_point_.assign((std::size_t)spec_.X.degree(), -1);
  for (int i = 0; i < spec_.t(); ++i)
    for (std::size_t pos = 0; pos < spec_.omegas[(std::size_t)i].size(); ++pos) {
      int p = spec_.omegas[(std::size_t)i][pos];
      omega_of_point_[(std::size_t)p] = i;
      pos_of_point_[(std::size_t)p] = (int)pos;
    }
  int off = 0;
  for (int i = 0; i < spec_.t(); ++i) {
    block_start_.push_back(off);
    off += (int)spec_.omegas[(std::size_t)i].size() * spec_.bases[(std::size_t)i].degree();
  }
  perm_degree_ = off;
}

Int Semidirect::order() const {
  Int n = spec_.X.order();
  for (int i = 0; i < spec_.t(); ++i)
    n *= int_pow(spec_.bases[(std::size_t)i].order(), spec_.omegas[(std::size_t)i].size());
  return n;
}

int Semidirect::block_point(int i, int pos, int p) const {
  return block_start_[(std::size_t)i] + pos * spec_.bases[(std::size_t)i].degree() + p;
}

SdElement Semidirect::identity() const {
  SdElement e{Permutation::identity(spec_.X.degree()), {}};
  for (int i = 0; i < spec_.t(); ++i)
    e.f.emplace_back(spec_.omegas[(std::size_t)i].size(),
                     Permutation::identity(spec_.bases[(std::size_t)i].degree()));
  return e;
}

SdElement Semidirect::mult(const SdElement& a, const SdElement& b) const {
  SdElement r{a.x * b.x, {}};
  for (int i = 0; i < spec_.t(); ++i) {
    const auto& om = spec_.omegas[(std::size_t)i];
    std::vector<Permutation> fi;
    fi.reserve(om.size());
    for (std::size_t pos = 0; pos < om.size(); ++pos) {
      int moved = pos_of_point_[(std::size_t)b.x(om[pos])];
      fi.push_back(a.f[(std::size_t)i][(std::size_t)moved] * b.f[(std::size_t)i][pos]);
    }
    r.f.push_back(std::move(fi));
  }
  return r;
}

SdElement Semidirect::x_only(Permutation x) const {
  require_input(x.degree() == spec_.X.degree(), "x part has the wrong degree");
  SdElement e = identity();
  e.x = std::move(x);
  return e;
}

SdElement Semidirect::leaf(int i, int pos, Permutation b) const {
  require_input(i >= 0 && i < spec_.t(), "orbit index out of range");
  require_input(pos >= 0 && pos < (int)spec_.omegas[(std::size_t)i].size(),
                "position out of range");
  require_input(b.degree() == spec_.bases[(std::size_t)i].degree(),
                "leaf has the wrong degree");
  SdElement e = identity();
  e.f[(std::size_t)i][(std::size_t)pos] = std::move(b);
  return e;
}

Permutation Semidirect::to_permutation(const SdElement& e) const {
  std::vector<int> img((std::size_t)perm_degree_);
  for (int i = 0; i < spec_.t(); ++i) {
    const auto& om = spec_.omegas[(std::size_t)i];
    int bd = spec_.bases[(std::size_t)i].degree();
    for (std::size_t pos = 0; pos < om.size(); ++pos) {
      int tpos = pos_of_point_[(std::size_t)e.x(om[pos])];
      const Permutation& leaf = e.f[(std::size_t)i][pos];
      for (int p = 0; p < bd; ++p)
        img[(std::size_t)block_point(i, (int)pos, p)] = block_point(i, tpos, leaf(p));
    }
  }
  return Permutation(std::move(img));
}

SdElement Semidirect::from_permutation(const Permutation& p) const {
  require_input(p.degree() == perm_degree_, "permutation has the wrong degree");
  std::vector<int> ximg((std::size_t)spec_.X.degree());
  SdElement e = identity();
  for (int i = 0; i < spec_.t(); ++i) {
    const auto& om = spec_.omegas[(std::size_t)i];
    int bd = spec_.bases[(std::size_t)i].degree();
    for (std::size_t pos = 0; pos < om.size(); ++pos) {
      int t0 = p(block_point(i, (int)pos, 0)) - block_start_[(std::size_t)i];
      require_input(t0 >= 0 && t0 < (int)om.size() * bd, "blocks are not preserved");
      int tpos = t0 / bd;
      std::vector<int> inner((std::size_t)bd);
      for (int q = 0; q < bd; ++q) {
        int t = p(block_point(i, (int)pos, q)) - block_point(i, tpos, 0);
        require_input(t >= 0 && t < bd, "blocks are not preserved");
        inner[(std::size_t)q] = t;
      }
      ximg[(std::size_t)om[pos]] = om[(std::size_t)tpos];
      Permutation leaf(std::move(inner));
      require_input(spec_.bases[(std::size_t)i].contains(leaf),
                    "leaf part lies outside the base group");
      e.f[(std::size_t)i][pos] = std::move(leaf);
    }
  }
  Permutation x(std::move(ximg));
  require_input(spec_.X.contains(x), "top part lies outside X");
  e.x = std::move(x);
  return e;
}

PermGroup Semidirect::as_perm_group() const {
  std::vector<Permutation> gens;
  for (const auto& g : spec_.X.generators()) gens.push_back(to_permutation(x_only(g)));
  for (int i = 0; i < spec_.t(); ++i)
    for (std::size_t pos = 0; pos < spec_.omegas[(std::size_t)i].size(); ++pos)
      for (const auto& g : spec_.bases[(std::size_t)i].generators())
        gens.push_back(to_permutation(leaf(i, (int)pos, g)));
  return PermGroup(perm_degree_, std::move(gens));
}

const GroupTable& Semidirect::table(std::size_t cap) const {
  if (!table_)
    table_ = std::make_shared<GroupTable>(GroupTable::from_perm_group(as_perm_group(), cap));
  return *table_;
}

Permutation Semidirect::pi_of(elem_t e) const {
  return from_permutation(table().perm(e)).x;
}

Subgroup Semidirect::base_subgroup() const {
  const GroupTable& t = table();
  std::vector<elem_t> gens;
  for (int i = 0; i < spec_.t(); ++i)
    for (std::size_t pos = 0; pos < spec_.omegas[(std::size_t)i].size(); ++pos)
      for (const auto& g : spec_.bases[(std::size_t)i].generators()) {
        auto idx = t.index_of(to_permutation(leaf(i, (int)pos, g)));
        require_internal(idx.has_value(), "kernel generator missing from table");
        gens.push_back(*idx);
      }
  return subgroup_generated(t, gens);
}

bool Semidirect::surjects_onto_x(const Subgroup& M) const {
  std::set<Permutation> xs;
  for (elem_t e : M.elems) xs.insert(pi_of(e));
  return Int(xs.size()) == spec_.X.order();
}

CoreReport standard_core(const Semidirect& Y, const Subgroup& M) {
  const GroupTable& t = Y.table();
  const auto& spec = Y.spec();
  CoreReport rep;
  std::vector<elem_t> core_gens;
  for (int i = 0; i < spec.t(); ++i) {
    PermGroup B = spec.bases[(std::size_t)i];
    GroupTable bt = GroupTable::from_perm_group(B);
    auto lat = SubgroupLattice::build(bt, bt.size());
    // Contained normal subgroups are closed under join, so the largest
    // contained one absorbs the rest.
    std::vector<int> normals;
    for (std::size_t nd = 0; nd < lat.nodes().size(); ++nd)
      if (is_normal(bt, Subgroup{lat.nodes()[nd].elems, lat.nodes()[nd].bits,
                                 lat.nodes()[nd].gens}))
        normals.push_back((int)nd);
    std::sort(normals.begin(), normals.end(), [&](int a, int b) {
      return lat.nodes()[(std::size_t)a].elems.size() > lat.nodes()[(std::size_t)b].elems.size();
    });
    std::vector<elem_t> best{0};
    for (int nd : normals) {
      const auto& node = lat.nodes()[(std::size_t)nd];
      bool inside = true;
      for (std::size_t pos = 0; inside && pos < spec.omegas[(std::size_t)i].size(); ++pos)
        for (elem_t g : node.gens) {
          auto idx = t.index_of(Y.to_permutation(Y.leaf(i, (int)pos, bt.perm(g))));
          require_internal(idx.has_value(), "leaf element missing from table");
          if (!M.bits.test(*idx)) {
            inside = false;
            break;
          }
        }
      if (inside) {
        best = node.elems;
        for (std::size_t pos = 0; pos < spec.omegas[(std::size_t)i].size(); ++pos)
          for (elem_t g : node.gens) {
            auto idx = t.index_of(Y.to_permutation(Y.leaf(i, (int)pos, bt.perm(g))));
            core_gens.push_back(*idx);
          }
        break;
      }
    }
    rep.factor_cores.push_back(std::move(best));
  }
  rep.core = subgroup_generated(t, core_gens);
  rep.clean = rep.core.order() == 1;
  return rep;
}

bool is_maximal_exhaustive(const GroupTable& G, const Subgroup& M) {
  std::size_t n = G.size();
  if (M.elems.size() >= n) return false;
  std::vector<elem_t> gens = M.gens;
  if (gens.empty()) gens = M.elems;  // coset closure needs a usable gen set
  for (std::size_t y = 0; y < n; ++y) {
    if (M.bits.test(y)) continue;
    // Right-coset closure of <M, y>; M must be joined to the whole group.
    Bitset bits = M.bits;
    std::size_t count = M.elems.size();
    std::vector<elem_t> reps{(elem_t)y};
    for (elem_t e : M.elems) bits.set(G.mul(e, (elem_t)y));
    count += M.elems.size();
    while (!reps.empty() && count < n) {
      elem_t r = reps.back();
      reps.pop_back();
      auto try_coset = [&](elem_t c) {
        if (bits.test(c)) return;
        reps.push_back(c);
        for (elem_t e : M.elems) bits.set(G.mul(e, c));
        count += M.elems.size();
      };
      try_coset(G.mul(r, (elem_t)y));
      for (elem_t g : gens) try_coset(G.mul(r, g));
    }
    if (count < n) return false;
  }
  return true;
}

SubgroupReport classify_maximal(const Semidirect& Y, const Subgroup& M) {
  const GroupTable& t = Y.table();
  const auto& spec = Y.spec();
  SubgroupReport rep;
  rep.M = M;
  rep.index = Y.order() / Int(M.elems.size());
  rep.proper = M.elems.size() < t.size();
  rep.surjects_onto_x = Y.surjects_onto_x(M);
  rep.clean = standard_core(Y, M).clean;

  Subgroup base = Y.base_subgroup();
  std::vector<elem_t> inter;
  for (elem_t e : M.elems)
    if (base.contains(e)) inter.push_back(e);

  if (!rep.proper || M.elems.size() == 1) {
    rep.case_tag = "none";
  } else if (spec.t() == 2) {
    // Graph case: trivial meet with each factor, full projections.
    Int k1 = int_pow(spec.bases[0].order(), spec.omegas[0].size());
    Int k2 = int_pow(spec.bases[1].order(), spec.omegas[1].size());
    bool full_graph = Int(inter.size()) == k1 && k1 == k2;
    if (full_graph) {
      for (int i = 0; i < 2 && full_graph; ++i) {
        std::size_t meet = 0;
        for (elem_t e : inter) {
          SdElement se = Y.from_permutation(t.perm(e));
          bool other_trivial = true;
          for (const auto& leaf : se.f[(std::size_t)(1 - i)])
            if (!leaf.is_identity()) other_trivial = false;
          if (other_trivial) ++meet;
        }
        if (meet != 1) full_graph = false;
      }
    }
    rep.case_tag = full_graph ? "graph_iso" : "none";
  } else if (spec.t() == 1) {
    if (inter.size() == 1) {
      rep.case_tag = "section";
    } else {
      const PermGroup& B = spec.bases[0];
      std::size_t bsize = B.order().convert_to<std::size_t>();
      bool full_pr = true;
      for (std::size_t pos = 0; full_pr && pos < spec.omegas[0].size(); ++pos) {
        std::set<Permutation> pr;
        for (elem_t e : inter) pr.insert(Y.from_permutation(t.perm(e)).f[0][pos]);
        if (pr.size() != bsize) full_pr = false;
      }
      rep.case_tag = full_pr ? "subdiagonal" : "normalizer_T";
    }
  } else {
    rep.case_tag = "none";
  }

  rep.maximal_checked = true;
  rep.maximal = is_maximal_exhaustive(t, M);
  if (!rep.maximal) rep.note = "not maximal in Y";
  return rep;
}

SubgroupReport construct_graph_iso(const Semidirect& Y, const GraphIsoData& data) {
  const auto& spec = Y.spec();
  require_input(spec.t() == 2, "graph construction needs exactly two factors");
  const auto& om1 = spec.omegas[0];
  const auto& om2 = spec.omegas[1];
  require_input(om1.size() == om2.size(), "no position bijection exists");
  require_input(data.sigma.size() == om1.size() && data.phi.size() == om1.size(),
                "need a target position and an isomorphism per position");
  std::vector<int> hit(om2.size(), 0);
  for (int s : data.sigma) {
    require_input(s >= 0 && s < (int)om2.size() && !hit[(std::size_t)s]++,
                  "sigma must be a bijection of positions");
  }
  // X-equivariance of sigma.
  const GroupTable& t = Y.table();
  auto pos_in = [&](const std::vector<int>& om, int point) {
    return (int)(std::lower_bound(om.begin(), om.end(), point) - om.begin());
  };
  for (const auto& x : spec.X.generators())
    for (std::size_t w = 0; w < om1.size(); ++w) {
      int lhs = data.sigma[(std::size_t)pos_in(om1, x(om1[w]))];
      int rhs = pos_in(om2, x(om2[(std::size_t)data.sigma[w]]));
      require_input(lhs == rhs, "sigma is not X-equivariant");
    }

  GroupTable b1 = GroupTable::from_perm_group(spec.bases[0]);
  GroupTable b2 = GroupTable::from_perm_group(spec.bases[1]);
  require_input(b1.size() == b2.size(), "factors are not isomorphic");
  std::vector<elem_t> gens;
  for (std::size_t w = 0; w < om1.size(); ++w) {
    const GroupHom& phi = data.phi[w];
    require_input(phi.map.size() == b1.size() && phi.is_surjective(),
                  "phi must be an isomorphism");
    for (elem_t g : b1.generator_indices()) {
      SdElement e = Y.identity();
      e.f[0][w] = b1.perm(g);
      e.f[1][(std::size_t)data.sigma[w]] = b2.perm(phi.map[g]);
      auto idx = t.index_of(Y.to_permutation(e));
      require_internal(idx.has_value(), "graph generator missing from table");
      gens.push_back(*idx);
    }
  }
  Subgroup S = subgroup_generated(t, gens);
  Subgroup M = normalizer(t, S);

  SubgroupReport rep = classify_maximal(Y, M);
  rep.case_tag = "graph_iso";
  return rep;
}

GraphIsoCount count_graph_iso_classes(const Semidirect& Y, std::size_t lattice_cap) {
  const auto& spec = Y.spec();
  require_input(spec.t() == 2, "graph count needs exactly two factors");
  const GroupTable& t = Y.table();
  auto lat = SubgroupLattice::build(t, lattice_cap);

  GraphIsoCount res;
  for (const auto& mc : lat.maximal_classes()) {
    const auto& node = lat.nodes()[(std::size_t)mc.rep_node];
    Subgroup M{node.elems, node.bits, node.gens};
    SubgroupReport rep = classify_maximal(Y, M);
    if (rep.maximal && rep.clean && rep.surjects_onto_x && rep.case_tag == "graph_iso")
      ++res.count;
  }

  // Bound: |Out(B_1)| times the number of points of Omega_2 whose X-stabilizer
  // equals that of the first point of Omega_1.
  GroupTable b1 = GroupTable::from_perm_group(spec.bases[0]);
  AutomorphismGroup aut = automorphisms(b1);
  GroupTable xt = GroupTable::from_perm_group(spec.X);
  auto stab_elems = [&](int point) {
    std::vector<elem_t> s;
    for (std::size_t e = 0; e < xt.size(); ++e)
      if (xt.perm((elem_t)e)(point) == point) s.push_back((elem_t)e);
    return s;
  };
  auto s1 = stab_elems(spec.omegas[0][0]);
  Int same = 0;
  for (int v : spec.omegas[1])
    if (stab_elems(v) == s1) ++same;
  res.bound = aut.out_order * same;
  res.within_bound = Int(res.count) <= res.bound;
  return res;
}

SubdiagonalResult construct_subdiagonal(const SubdiagonalSpec& sd, std::size_t enum_cap) {
  require_input(sd.r >= 1, "need at least one copy");
  require_input(sd.T.order() > 1 && sd.T.is_perfect(), "T must be nontrivial and perfect");
  int omega = sd.X.degree();
  int copies = sd.r * omega;
  int dt = sd.T.degree();
  require_input((int)sd.twists.size() == copies, "need one twist per copy-point");
  for (const auto& a : sd.twists) {
    require_input(a.degree() == dt, "twist has the wrong degree");
    for (const auto& g : sd.T.generators())
      require_input(sd.T.contains(g.conjugated_by(a)), "twist must normalize T");
  }

  std::set<std::vector<int>> blocks;
  std::vector<int> seen((std::size_t)copies, 0);
  for (auto block : sd.partition) {
    require_input(block.size() >= 2, "blocks must have size >= 2");
    std::sort(block.begin(), block.end());
    for (int p : block) {
      require_input(p >= 0 && p < copies, "block point out of range");
      require_input(!seen[(std::size_t)p]++, "blocks must be disjoint");
    }
    blocks.insert(block);
  }
  for (int p = 0; p < copies; ++p)
    require_input(seen[(std::size_t)p] == 1, "blocks must cover all copies");
  for (const auto& x : sd.X.generators())
    for (const auto& block : blocks) {
      std::vector<int> img;
      for (int p : block) img.push_back((p / omega) * omega + x(p % omega));
      std::sort(img.begin(), img.end());
      require_input(blocks.count(img) > 0, "partition is not X-invariant");
    }

  // Flat layout matching Y = X x| (T^r)^Omega: point(pos, c, p) with the
  // copy-point (c, pos) encoded as c*omega + pos.
  int deg = omega * sd.r * dt;
  auto flat = [&](int copy_point, int p) {
    int c = copy_point / omega, pos = copy_point % omega;
    return pos * (sd.r * dt) + c * dt + p;
  };
  std::vector<Permutation> hgens;
  for (const auto& block : blocks)
    for (const auto& g : sd.T.generators()) {
      std::vector<int> img((std::size_t)deg);
      for (int i = 0; i < deg; ++i) img[(std::size_t)i] = i;
      for (int cp : block) {
        Permutation tw = sd.twists[(std::size_t)cp];
        Permutation local = tw * g * tw.inverse();
        for (int p = 0; p < dt; ++p) img[(std::size_t)flat(cp, p)] = flat(cp, local(p));
      }
      hgens.emplace_back(std::move(img));
    }

  SubdiagonalResult res{PermGroup(deg, std::move(hgens)), 0, 0, std::nullopt};
  Int torder = sd.T.order();
  res.index = int_pow(torder, (std::size_t)copies) / res.H.order();
  res.expected_index = int_pow(torder, (std::size_t)(copies - (int)blocks.size()));

  Int yorder = sd.X.order() * int_pow(torder, (std::size_t)copies);
  if (yorder <= Int(enum_cap)) {
    std::vector<Permutation> bgens;
    for (int c = 0; c < sd.r; ++c)
      for (const auto& g : sd.T.generators()) {
        std::vector<int> img((std::size_t)(sd.r * dt));
        for (int i = 0; i < sd.r * dt; ++i) img[(std::size_t)i] = i;
        for (int p = 0; p < dt; ++p) img[(std::size_t)(c * dt + p)] = c * dt + g(p);
        bgens.emplace_back(std::move(img));
      }
    std::vector<int> om(static_cast<std::size_t>(omega));
    for (int i = 0; i < omega; ++i) om[(std::size_t)i] = i;
    Semidirect Y(SemidirectSpec::make(sd.X, {om}, {PermGroup(sd.r * dt, bgens)}));
    const GroupTable& t = Y.table(enum_cap);

    GroupTable ht = GroupTable::from_perm_group(res.H, enum_cap);
    std::vector<elem_t> helems;
    for (std::size_t e = 0; e < ht.size(); ++e) {
      auto idx = t.index_of(ht.perm((elem_t)e));
      require_internal(idx.has_value(), "subdiagonal element missing from Y");
      helems.push_back(*idx);
    }
    std::sort(helems.begin(), helems.end());
    Bitset bits(t.size());
    for (elem_t e : helems) bits.set(e);
    std::vector<elem_t> hgidx;
    for (elem_t g : ht.generator_indices()) hgidx.push_back(*t.index_of(ht.perm(g)));
    Subgroup H{std::move(helems), std::move(bits), std::move(hgidx)};

    Subgroup M = normalizer(t, H);
    SubgroupReport rep = classify_maximal(Y, M);
    rep.case_tag = "subdiagonal";
    res.report = std::move(rep);
  }
  return res;
}

SubgroupReport construct_normalizer_t(const Semidirect& Y, const PermGroup& T) {
  const auto& spec = Y.spec();
  require_input(spec.t() == 1, "normalizer construction needs a single factor");
  const PermGroup& B = spec.bases[0];
  require_input(T.degree() == B.degree(), "T must act on B's domain");
  for (const auto& g : T.generators()) require_input(B.contains(g), "T must lie inside B");
  require_input(T.order() > 1 && T.order() < B.order(), "need e < T < B");

  const GroupTable& t = Y.table();
  std::vector<elem_t> gens;
  for (std::size_t pos = 0; pos < spec.omegas[0].size(); ++pos)
    for (const auto& g : T.generators()) {
      auto idx = t.index_of(Y.to_permutation(Y.leaf(0, (int)pos, g)));
      require_internal(idx.has_value(), "T generator missing from table");
      gens.push_back(*idx);
    }
  Subgroup S = subgroup_generated(t, gens);
  Subgroup M = normalizer(t, S);

  SubgroupReport rep = classify_maximal(Y, M);
  rep.case_tag = "normalizer_T";
  Int floor = int_pow(B.order() / T.order(), spec.omegas[0].size());
  if (rep.index < floor) rep.note += " index below [B:T]^|Omega|";
  bool t_normal = true;
  for (const auto& b : B.generators())
    for (const auto& g : T.generators())
      if (!T.contains(g.conjugated_by(b))) t_normal = false;
  if (t_normal) rep.note += " T is normal in B";
  return rep;
}

Int count_sections(const Semidirect& Y) {
  const GroupTable& t = Y.table();
  GroupTable xt = GroupTable::from_perm_group(Y.spec().X);
  std::vector<Permutation> pi(t.size(), Permutation::identity(1));
  for (std::size_t e = 0; e < t.size(); ++e) pi[e] = Y.pi_of((elem_t)e);

  std::vector<elem_t> xg = xt.generator_indices();
  if (xg.empty()) return 1;  // trivial X has the trivial section only
  std::vector<std::vector<elem_t>> cands;
  Int total = 1;
  for (elem_t g : xg) {
    Permutation target = xt.perm(g);
    std::vector<elem_t> c;
    for (std::size_t e = 0; e < t.size(); ++e)
      if (pi[e] == target) c.push_back((elem_t)e);
    total *= Int(c.size());
    cands.push_back(std::move(c));
  }
  require_cap(total <= 10000000, "section search space exceeds cap");

  Int count = 0;
  std::vector<std::size_t> pick(cands.size(), 0);
  std::vector<elem_t> imgs(cands.size());
  for (;;) {
    for (std::size_t i = 0; i < cands.size(); ++i) imgs[i] = cands[i][pick[i]];
    if (hom_from_gen_images(xt, t, imgs)) ++count;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == cands[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return count;
}

PartitionCount count_invariant_partitions(const PermGroup& X, int r, std::size_t domain_cap) {
  require_input(r >= 1, "need at least one copy");
  int omega = X.degree();
  int copies = r * omega;
  std::vector<Permutation> rgens;
  for (const auto& x : X.generators()) {
    std::vector<int> img((std::size_t)copies);
    for (int c = 0; c < r; ++c)
      for (int p = 0; p < omega; ++p) img[(std::size_t)(c * omega + p)] = c * omega + x(p);
    rgens.emplace_back(std::move(img));
  }
  PermGroup Xr(copies, std::move(rgens));
  std::vector<int> dom((std::size_t)copies);
  for (int i = 0; i < copies; ++i) dom[(std::size_t)i] = i;
  auto parts = Xr.invariant_partitions(dom, domain_cap);
  Int exact = 0;
  for (const auto& part : parts) {
    bool ok = true;
    for (const auto& b : part)
      if (b.size() < 2) ok = false;
    if (ok) ++exact;
  }

  std::vector<int> one((std::size_t)omega);
  for (int i = 0; i < omega; ++i) one[(std::size_t)i] = i;
  Int a((long long)X.invariant_partitions(one, domain_cap).size());

  PartitionCount res;
  res.exact = exact;
  res.bound = int_pow(Int(2 * omega), (std::size_t)(r - 1)) * int_pow(a, (std::size_t)r);
  res.within_bound = res.exact <= res.bound;
  return res;
}

}  // namespace wp
