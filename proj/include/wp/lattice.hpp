#pragma once

#include <vector>

#include "wp/numeric.hpp"
#include "wp/table.hpp"

namespace wp {

struct MaximalClass {
  int rep_node;           // lattice node index of the class representative
  Int index;              // [G : M]
  std::size_t class_size; // number of Y-conjugates
};

// Complete subgroup lattice of a small enumerated group: every subgroup,
// inclusion order, conjugacy classes and the Moebius function mu(H, G).
class SubgroupLattice {
 public:
  struct Node {
    std::vector<elem_t> elems;  // sorted
    Bitset bits;
    std::vector<elem_t> gens;
    int class_id = -1;
    Int mobius = 0;
  };

  static SubgroupLattice build(const GroupTable& G, std::size_t order_cap = 2000);

  const GroupTable& group() const { return *group_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  // class -> node indices; front() is the lexicographically smallest member,
  // used as the canonical class representative.
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  const std::vector<std::vector<int>>& strict_supers() const { return supers_; }
  int whole_node() const { return whole_; }
  int trivial_node() const { return 0; }

  int find_node(const std::vector<elem_t>& sorted_elems) const;  // -1 if absent
  std::vector<int> maximal_nodes() const;
  std::vector<MaximalClass> maximal_classes() const;

  // p_k(G) = sum_H mu(H,G) (|H|/|G|)^k, exact.
  Rat pk_mobius(unsigned k) const;

 private:
  const GroupTable* group_ = nullptr;
  std::vector<Node> nodes_;
  std::vector<std::vector<int>> classes_;
  std::vector<std::vector<int>> supers_;
  int whole_ = -1;
};

struct AutomorphismGroup {
  // Full element maps; maps[0] is the identity automorphism.
  std::vector<std::vector<elem_t>> maps;
  Int aut_order;
  Int inner_order;
  Int out_order;
};

// All automorphisms by generator-image backtracking, each assignment verified
// on the full multiplication table.
AutomorphismGroup automorphisms(const GroupTable& G);

// Exact |Hom(src, dst)| by verified generator-image search.
// Throws cap_error when the candidate search space exceeds `search_cap`.
Int hom_count(const GroupTable& src, const GroupTable& dst,
              const Int& search_cap = Int(10000000));

}  // namespace wp
