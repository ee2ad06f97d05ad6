#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wp/numeric.hpp"
#include "wp/perm.hpp"
#include "wp/permgroup.hpp"

namespace wp {

using elem_t = std::uint16_t;

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool operator==(const Bitset& o) const { return w_ == o.w_; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Fully enumerated finite group with its multiplication table.  Element 0 is
// the identity; elements are discovered in deterministic BFS order from the
// generators.  Caps keep the n^2 table at desk scale.
class GroupTable {
 public:
  static GroupTable from_perm_group(const PermGroup& g, std::size_t cap = 8192);

  std::size_t size() const { return (std::size_t)n_; }
  elem_t mul(elem_t a, elem_t b) const { return mult_[(std::size_t)a * (std::size_t)n_ + b]; }
  elem_t inv(elem_t a) const { return inv_[a]; }
  int element_order(elem_t a) const { return eorder_[a]; }
  elem_t conj(elem_t g, elem_t x) const { return mul(mul(g, x), inv_[g]); }

  const std::vector<elem_t>& generator_indices() const { return gens_; }
  const Permutation& perm(elem_t i) const { return elems_[i]; }
  int degree() const { return elems_.empty() ? 0 : elems_[0].degree(); }
  std::optional<elem_t> index_of(const Permutation& p) const;

  // BFS spanning structure: elems_[i] == elems_[parent_[i]] * gen(pgen_[i]).
  elem_t bfs_parent(elem_t i) const { return parent_[i]; }
  elem_t bfs_gen(elem_t i) const { return pgen_[i]; }

  std::vector<elem_t> center() const;
  bool subset_is_abelian(const std::vector<elem_t>& elems) const;

 private:
  int n_ = 0;
  std::vector<elem_t> mult_, inv_, gens_, parent_, pgen_;
  std::vector<int> eorder_;
  std::vector<Permutation> elems_;
  std::unordered_map<Permutation, elem_t, PermHash> index_;
};

// Subgroup of a GroupTable: sorted element list, membership bitset and a
// small generating set.
struct Subgroup {
  std::vector<elem_t> elems;
  Bitset bits;
  std::vector<elem_t> gens;

  std::size_t order() const { return elems.size(); }
  bool contains(elem_t e) const { return bits.test(e); }
};

Subgroup trivial_subgroup(const GroupTable& G);
Subgroup full_subgroup(const GroupTable& G);
// Smallest subgroup containing H and the element c (coset BFS; O(|result|)).
Subgroup join_with_element(const GroupTable& G, const Subgroup& H, elem_t c);
Subgroup subgroup_generated(const GroupTable& G, const std::vector<elem_t>& gens);
Subgroup conjugate_subgroup(const GroupTable& G, const Subgroup& H, elem_t g);
// Elements y with y H y^{-1} = H.
Subgroup normalizer(const GroupTable& G, const Subgroup& H);
bool is_normal(const GroupTable& G, const Subgroup& H);

// Homomorphism between enumerated groups, as a total element map verified on
// the full multiplication table.
struct GroupHom {
  const GroupTable* src = nullptr;
  const GroupTable* dst = nullptr;
  std::vector<elem_t> map;

  elem_t operator()(elem_t e) const { return map[e]; }
  bool is_surjective() const;
  std::vector<elem_t> image_sorted() const;
};

// Extends generator images to a verified homomorphism; nullopt when the
// assignment is inconsistent.
std::optional<GroupHom> hom_from_gen_images(const GroupTable& src, const GroupTable& dst,
                                            const std::vector<elem_t>& images);

}  // namespace wp
