#include "wp/table.hpp"

#include <algorithm>

namespace wp {

GroupTable GroupTable::from_perm_group(const PermGroup& g, std::size_t cap) {
  GroupTable t;
  const int deg = g.degree();
  t.elems_.push_back(Permutation::identity(deg));
  t.index_[t.elems_[0]] = 0;
  std::vector<Permutation> gen_perms;
  for (const auto& p : g.generators())
    if (!p.is_identity()) gen_perms.push_back(p);
  t.parent_.push_back(0);
  t.pgen_.push_back(0);
  for (std::size_t i = 0; i < t.elems_.size(); ++i) {
    for (std::size_t j = 0; j < gen_perms.size(); ++j) {
      Permutation prod = t.elems_[i] * gen_perms[j];
      if (t.index_.find(prod) == t.index_.end()) {
        require_cap(t.elems_.size() < cap,
                    "group enumeration exceeds element cap " + std::to_string(cap));
        t.index_[prod] = (elem_t)t.elems_.size();
        t.parent_.push_back((elem_t)i);
        t.pgen_.push_back((elem_t)j);
        t.elems_.push_back(std::move(prod));
      }
    }
  }
  t.n_ = (int)t.elems_.size();
  for (const auto& p : gen_perms) t.gens_.push_back(t.index_.at(p));
  // pgen_ indexes gens_ directly once gens_ is known
  for (std::size_t i = 1; i < t.pgen_.size(); ++i) t.pgen_[i] = t.gens_[t.pgen_[i]];
  t.mult_.resize((std::size_t)t.n_ * (std::size_t)t.n_);
  for (int a = 0; a < t.n_; ++a)
    for (int b = 0; b < t.n_; ++b)
      t.mult_[(std::size_t)a * (std::size_t)t.n_ + (std::size_t)b] =
          t.index_.at(t.elems_[(std::size_t)a] * t.elems_[(std::size_t)b]);
  t.inv_.resize((std::size_t)t.n_);
  for (int a = 0; a < t.n_; ++a)
    t.inv_[(std::size_t)a] = t.index_.at(t.elems_[(std::size_t)a].inverse());
  t.eorder_.resize((std::size_t)t.n_);
  for (int a = 0; a < t.n_; ++a) {
    int ord = 1;
    elem_t x = (elem_t)a;
    while (x != 0) {
      x = t.mul(x, (elem_t)a);
      ++ord;
    }
    t.eorder_[(std::size_t)a] = ord;
  }
  return t;
}

std::optional<elem_t> GroupTable::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<elem_t> GroupTable::center() const {
  std::vector<elem_t> z;
  for (int a = 0; a < n_; ++a) {
    bool central = true;
    for (elem_t g : gens_)
      if (mul((elem_t)a, g) != mul(g, (elem_t)a)) {
        central = false;
        break;
      }
    if (central) z.push_back((elem_t)a);
  }
  return z;
}

bool GroupTable::subset_is_abelian(const std::vector<elem_t>& elems) const {
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (mul(elems[i], elems[j]) != mul(elems[j], elems[i])) return false;
  return true;
}

Subgroup trivial_subgroup(const GroupTable& G) {
  Subgroup s;
  s.elems = {0};
  s.bits = Bitset((std::size_t)G.size());
  s.bits.set(0);
  return s;
}

Subgroup full_subgroup(const GroupTable& G) {
  Subgroup s;
  s.elems.resize((std::size_t)G.size());
  s.bits = Bitset((std::size_t)G.size());
  for (std::size_t i = 0; i < G.size(); ++i) {
    s.elems[(std::size_t)i] = (elem_t)i;
    s.bits.set((std::size_t)i);
  }
  s.gens = G.generator_indices();
  return s;
}

Subgroup join_with_element(const GroupTable& G, const Subgroup& H, elem_t c) {
  if (H.contains(c)) return H;
  Subgroup J;
  J.bits = H.bits;
  J.elems = H.elems;
  J.gens = H.gens;
  J.gens.push_back(c);
  // BFS over right cosets H t; coset reps expanded elementwise.
  std::vector<elem_t> reps = {0};
  std::vector<elem_t> side_gens = J.gens;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (elem_t g : side_gens) {
      elem_t x = G.mul(reps[i], g);
      if (!J.bits.test(x)) {
        reps.push_back(x);
        for (elem_t h : H.elems) {
          elem_t y = G.mul(h, x);
          J.bits.set(y);
          J.elems.push_back(y);
        }
      }
    }
  }
  std::sort(J.elems.begin(), J.elems.end());
  return J;
}

Subgroup subgroup_generated(const GroupTable& G, const std::vector<elem_t>& gens) {
  Subgroup s = trivial_subgroup(G);
  for (elem_t g : gens) s = join_with_element(G, s, g);
  // keep only the supplied generators as the generating set
  s.gens.clear();
  for (elem_t g : gens)
    if (g != 0) s.gens.push_back(g);
  return s;
}

Subgroup conjugate_subgroup(const GroupTable& G, const Subgroup& H, elem_t g) {
  Subgroup s;
  s.bits = Bitset((std::size_t)G.size());
  s.elems.reserve(H.elems.size());
  for (elem_t h : H.elems) {
    elem_t x = G.conj(g, h);
    s.elems.push_back(x);
    s.bits.set(x);
  }
  std::sort(s.elems.begin(), s.elems.end());
  for (elem_t h : H.gens) s.gens.push_back(G.conj(g, h));
  return s;
}

Subgroup normalizer(const GroupTable& G, const Subgroup& H) {
  // Conjugating the generators into H suffices: |yHy^-1| = |H|.
  std::vector<elem_t> gens = H.gens;
  if (gens.empty() && H.elems.size() > 1) gens.assign(H.elems.begin(), H.elems.end());
  Subgroup result;
  result.bits = Bitset((std::size_t)G.size());
  for (std::size_t y = 0; y < G.size(); ++y) {
    bool ok = true;
    for (elem_t h : gens)
      if (!H.bits.test(G.conj((elem_t)y, h))) {
        ok = false;
        break;
      }
    if (ok) {
      result.elems.push_back((elem_t)y);
      result.bits.set((std::size_t)y);
    }
  }
  // Record a small generating set (consumers expect gens to be usable).
  Subgroup span = trivial_subgroup(G);
  for (elem_t y : result.elems)
    if (!span.contains(y)) {
      span = join_with_element(G, span, y);
      result.gens.push_back(y);
    }
  return result;
}

bool is_normal(const GroupTable& G, const Subgroup& H) {
  for (elem_t g : G.generator_indices())
    for (elem_t h : H.gens.empty() ? H.elems : H.gens)
      if (!H.bits.test(G.conj(g, h))) return false;
  return true;
}

bool GroupHom::is_surjective() const {
  return image_sorted().size() == (std::size_t)dst->size();
}

std::vector<elem_t> GroupHom::image_sorted() const {
  std::vector<elem_t> img(map.begin(), map.end());
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img;
}

std::optional<GroupHom> hom_from_gen_images(const GroupTable& src, const GroupTable& dst,
                                            const std::vector<elem_t>& images) {
  const auto& gens = src.generator_indices();
  require_input(images.size() == gens.size(), "hom: one image per generator required");
  std::vector<elem_t> gen_image((std::size_t)src.size(), 0);
  for (std::size_t j = 0; j < gens.size(); ++j) gen_image[gens[j]] = images[j];
  std::vector<elem_t> map((std::size_t)src.size(), 0);
  for (std::size_t e = 1; e < src.size(); ++e)
    map[(std::size_t)e] =
        dst.mul(map[src.bfs_parent((elem_t)e)], gen_image[src.bfs_gen((elem_t)e)]);
  for (std::size_t e = 0; e < src.size(); ++e)
    for (elem_t g : gens)
      if (map[src.mul((elem_t)e, g)] != dst.mul(map[(std::size_t)e], map[g]))
        return std::nullopt;
  return GroupHom{&src, &dst, std::move(map)};
}

}  // namespace wp
