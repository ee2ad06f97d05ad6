#include "wp/lattice.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace wp {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<elem_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (elem_t e : v) {
      h ^= e;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

bool is_prime_power(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  }
  return true;  // prime
}

}  // namespace

SubgroupLattice SubgroupLattice::build(const GroupTable& G, std::size_t order_cap) {
  require_cap((std::size_t)G.size() <= order_cap,
              "subgroup lattice: group order " + std::to_string(G.size()) +
                  " exceeds lattice cap " + std::to_string(order_cap));
  SubgroupLattice L;
  L.group_ = &G;
  const std::size_t n = (std::size_t)G.size();

  std::vector<Subgroup> found;
  std::unordered_map<std::vector<elem_t>, int, VecHash> seen;

  auto register_subgroup = [&](Subgroup s) -> int {
    int id = (int)found.size();
    seen.emplace(s.elems, id);
    found.push_back(std::move(s));
    return id;
  };

  // class discovery: closes the conjugation orbit, returns index of the
  // lexicographically smallest member.
  std::vector<std::vector<int>> raw_classes;
  std::vector<int> raw_class_of;
  auto add_class = [&](Subgroup s) -> int {
    std::deque<int> bfs;
    std::vector<int> members;
    int first = register_subgroup(std::move(s));
    bfs.push_back(first);
    members.push_back(first);
    while (!bfs.empty()) {
      int cur = bfs.front();
      bfs.pop_front();
      for (elem_t g : G.generator_indices()) {
        Subgroup c = conjugate_subgroup(G, found[(std::size_t)cur], g);
        if (seen.find(c.elems) == seen.end()) {
          int id = register_subgroup(std::move(c));
          bfs.push_back(id);
          members.push_back(id);
        }
      }
    }
    int cid = (int)raw_classes.size();
    raw_class_of.resize(found.size(), -1);
    for (int m : members) raw_class_of[(std::size_t)m] = cid;
    int rep = members[0];
    for (int m : members)
      if (found[(std::size_t)m].elems < found[(std::size_t)rep].elems) rep = m;
    std::sort(members.begin(), members.end());
    raw_classes.push_back(std::move(members));
    return rep;
  };

  register_subgroup(trivial_subgroup(G));
  raw_classes.push_back({0});
  raw_class_of.push_back(0);
  int whole_raw = -1;
  if (n == 1) {
    whole_raw = 0;
  } else {
    Subgroup whole = full_subgroup(G);
    whole_raw = register_subgroup(std::move(whole));
    raw_classes.push_back({whole_raw});
    raw_class_of.push_back(1);
  }

  // Seed subgroups: cyclic of prime-power order (every subgroup is generated
  // by its prime-power elements, so join closure over these is complete).
  std::vector<elem_t> ppgens;  // one designated generator per distinct cyclic subgroup
  {
    std::unordered_map<std::vector<elem_t>, elem_t, VecHash> cyc_seen;
    for (std::size_t e = 1; e < G.size(); ++e) {
      if (!is_prime_power(G.element_order((elem_t)e))) continue;
      std::vector<elem_t> pow = {0};
      elem_t x = (elem_t)e;
      while (x != 0) {
        pow.push_back(x);
        x = G.mul(x, (elem_t)e);
      }
      std::sort(pow.begin(), pow.end());
      if (cyc_seen.emplace(std::move(pow), (elem_t)e).second == false) continue;
      ppgens.push_back((elem_t)e);
    }
  }

  std::deque<int> work;
  for (elem_t c : ppgens) {
    Subgroup s = subgroup_generated(G, {c});
    if (seen.find(s.elems) == seen.end()) work.push_back(add_class(std::move(s)));
  }
  while (!work.empty()) {
    int rep = work.front();
    work.pop_front();
    for (elem_t c : ppgens) {
      if (found[(std::size_t)rep].contains(c)) continue;
      Subgroup J = join_with_element(G, found[(std::size_t)rep], c);
      if (J.elems.size() == n) continue;  // whole group, already present
      if (seen.find(J.elems) == seen.end()) work.push_back(add_class(std::move(J)));
    }
  }

  // Deterministic node order: by (order, element list).
  std::vector<int> order_idx((std::size_t)found.size());
  for (std::size_t i = 0; i < found.size(); ++i) order_idx[i] = (int)i;
  std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
    if (found[(std::size_t)a].elems.size() != found[(std::size_t)b].elems.size())
      return found[(std::size_t)a].elems.size() < found[(std::size_t)b].elems.size();
    return found[(std::size_t)a].elems < found[(std::size_t)b].elems;
  });
  std::vector<int> new_index((std::size_t)found.size());
  for (std::size_t pos = 0; pos < order_idx.size(); ++pos)
    new_index[(std::size_t)order_idx[pos]] = (int)pos;

  L.nodes_.resize(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    Node& node = L.nodes_[(std::size_t)new_index[i]];
    node.elems = std::move(found[i].elems);
    node.bits = std::move(found[i].bits);
    node.gens = std::move(found[i].gens);
    node.class_id = raw_class_of[i];
  }
  L.whole_ = new_index[(std::size_t)whole_raw];
  // remap classes; canonical representative first
  L.classes_.resize(raw_classes.size());
  for (std::size_t c = 0; c < raw_classes.size(); ++c) {
    for (int m : raw_classes[c]) L.classes_[c].push_back(new_index[(std::size_t)m]);
    std::sort(L.classes_[c].begin(), L.classes_[c].end());
  }
  // class ids in node order of representative
  {
    std::vector<int> class_order((std::size_t)L.classes_.size());
    for (std::size_t c = 0; c < L.classes_.size(); ++c) class_order[c] = (int)c;
    std::sort(class_order.begin(), class_order.end(),
              [&](int a, int b) { return L.classes_[(std::size_t)a][0] < L.classes_[(std::size_t)b][0]; });
    std::vector<std::vector<int>> sorted_classes;
    std::vector<int> remap((std::size_t)L.classes_.size());
    for (std::size_t pos = 0; pos < class_order.size(); ++pos) {
      remap[(std::size_t)class_order[pos]] = (int)pos;
      sorted_classes.push_back(std::move(L.classes_[(std::size_t)class_order[pos]]));
    }
    L.classes_ = std::move(sorted_classes);
    for (auto& node : L.nodes_) node.class_id = remap[(std::size_t)node.class_id];
  }

  // Strict inclusion up-sets.
  const std::size_t N = L.nodes_.size();
  L.supers_.assign(N, {});
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t oi = L.nodes_[i].elems.size();
    for (std::size_t j = i + 1; j < N; ++j) {
      const std::size_t oj = L.nodes_[j].elems.size();
      if (oj <= oi || oj % oi != 0) continue;
      if (L.nodes_[i].bits.is_subset_of(L.nodes_[j].bits)) L.supers_[i].push_back((int)j);
    }
  }

  // Moebius, top-down.
  for (std::size_t i = N; i-- > 0;) {
    if ((int)i == L.whole_) {
      L.nodes_[i].mobius = 1;
      continue;
    }
    Int acc = 0;
    for (int j : L.supers_[i]) acc += L.nodes_[(std::size_t)j].mobius;
    L.nodes_[i].mobius = -acc;
  }
  return L;
}

int SubgroupLattice::find_node(const std::vector<elem_t>& sorted_elems) const {
  // nodes are sorted by (order, elems): binary search
  auto cmp = [](const Node& node, const std::vector<elem_t>& v) {
    if (node.elems.size() != v.size()) return node.elems.size() < v.size();
    return node.elems < v;
  };
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), sorted_elems, cmp);
  if (it == nodes_.end() || it->elems != sorted_elems) return -1;
  return (int)(it - nodes_.begin());
}

std::vector<int> SubgroupLattice::maximal_nodes() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if ((int)i != whole_ && supers_[i].size() == 1) out.push_back((int)i);
  return out;
}

std::vector<MaximalClass> SubgroupLattice::maximal_classes() const {
  std::vector<MaximalClass> out;
  std::vector<char> done(classes_.size(), 0);
  for (int m : maximal_nodes()) {
    int cid = nodes_[(std::size_t)m].class_id;
    if (done[(std::size_t)cid]) continue;
    done[(std::size_t)cid] = 1;
    MaximalClass mc;
    mc.rep_node = classes_[(std::size_t)cid][0];
    mc.index = Int(group_->size()) / Int(nodes_[(std::size_t)mc.rep_node].elems.size());
    mc.class_size = classes_[(std::size_t)cid].size();
    out.push_back(mc);
  }
  return out;
}

Rat SubgroupLattice::pk_mobius(unsigned k) const {
  Rat acc = 0;
  const Int g = group_->size();
  for (const auto& node : nodes_) {
    if (node.mobius == 0) continue;
    acc += Rat(node.mobius) * rat_pow(Rat(Int(node.elems.size()), g), k);
  }
  return acc;
}

AutomorphismGroup automorphisms(const GroupTable& G) {
  const auto& gens = G.generator_indices();
  AutomorphismGroup out;
  if (gens.empty()) {
    out.maps = {{0}};
    out.aut_order = out.inner_order = out.out_order = 1;
    return out;
  }
  std::vector<std::vector<elem_t>> candidates;
  for (elem_t g : gens) {
    std::vector<elem_t> cand;
    for (std::size_t e = 0; e < G.size(); ++e)
      if (G.element_order((elem_t)e) == G.element_order(g)) cand.push_back((elem_t)e);
    candidates.push_back(std::move(cand));
  }
  std::vector<std::size_t> odo(gens.size(), 0);
  std::vector<elem_t> images(gens.size());
  for (;;) {
    for (std::size_t j = 0; j < gens.size(); ++j) images[j] = candidates[j][odo[j]];
    if (auto h = hom_from_gen_images(G, G, images)) {
      std::vector<char> hit((std::size_t)G.size(), 0);
      bool bij = true;
      for (elem_t v : h->map) {
        if (hit[v]) {
          bij = false;
          break;
        }
        hit[v] = 1;
      }
      if (bij) out.maps.push_back(std::move(h->map));
    }
    std::size_t j = 0;
    while (j < odo.size() && ++odo[j] == candidates[j].size()) odo[j++] = 0;
    if (j == odo.size()) break;
  }
  out.aut_order = (Int)out.maps.size();
  Int z = (Int)G.center().size();
  out.inner_order = Int(G.size()) / z;
  require_internal(out.aut_order % out.inner_order == 0, "|Inn| must divide |Aut|");
  out.out_order = out.aut_order / out.inner_order;
  return out;
}

Int hom_count(const GroupTable& src, const GroupTable& dst, const Int& search_cap) {
  const auto& gens = src.generator_indices();
  if (gens.empty()) return 1;
  std::vector<std::vector<elem_t>> candidates;
  for (elem_t g : gens) {
    std::vector<elem_t> cand;
    int so = src.element_order(g);
    for (std::size_t e = 0; e < dst.size(); ++e)
      if (so % dst.element_order((elem_t)e) == 0) cand.push_back((elem_t)e);
    candidates.push_back(std::move(cand));
  }
  Int space = 1;
  for (const auto& cand : candidates) space *= Int(cand.size());
  require_cap(space <= search_cap, "hom search space exceeds cap");
  Int count = 0;
  std::vector<std::size_t> odo(gens.size(), 0);
  std::vector<elem_t> images(gens.size());
  for (;;) {
    for (std::size_t j = 0; j < gens.size(); ++j) images[j] = candidates[j][odo[j]];
    if (hom_from_gen_images(src, dst, images)) ++count;
    std::size_t j = 0;
    while (j < odo.size() && ++odo[j] == candidates[j].size()) odo[j++] = 0;
    if (j == odo.size()) break;
  }
  return count;
}

}  // namespace wp
