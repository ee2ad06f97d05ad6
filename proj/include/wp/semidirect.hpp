#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wp/lattice.hpp"
#include "wp/permgroup.hpp"
#include "wp/table.hpp"

namespace wp {

// Y = X x| prod_i B_i^(Omega_i): X permutes each Omega_i transitively and the
// B_i are nontrivial perfect groups.  Points of X's domain are shared across
// the Omega_i, which partition {0..X.degree()-1}.
struct SemidirectSpec {
  PermGroup X;
  std::vector<std::vector<int>> omegas;
  std::vector<PermGroup> bases;

  static SemidirectSpec make(PermGroup X, std::vector<std::vector<int>> omegas,
                             std::vector<PermGroup> bases);
  int t() const { return (int)omegas.size(); }
};

// Structured element (x, f): f[i][pos] in B_i indexed by position in Omega_i.
struct SdElement {
  Permutation x;
  std::vector<std::vector<Permutation>> f;
};

class Semidirect {
 public:
  explicit Semidirect(SemidirectSpec spec);

  const SemidirectSpec& spec() const { return spec_; }
  int perm_degree() const { return perm_degree_; }
  Int order() const;

  SdElement identity() const;
  SdElement mult(const SdElement& a, const SdElement& b) const;
  SdElement x_only(Permutation x) const;
  SdElement leaf(int i, int pos, Permutation b) const;

  Permutation to_permutation(const SdElement& e) const;
  SdElement from_permutation(const Permutation& p) const;
  const Permutation& project_x(const SdElement& e) const { return e.x; }

  PermGroup as_perm_group() const;

  // Enumerated form (throws cap_error past `cap` elements).
  const GroupTable& table(std::size_t cap = 20000) const;
  bool has_table() const { return table_ != nullptr; }
  Permutation pi_of(elem_t e) const;                 // X-part of a table element
  Subgroup base_subgroup() const;                    // kernel of the projection
  bool surjects_onto_x(const Subgroup& M) const;     // pi(M) = X
  int block_point(int i, int pos, int p) const;      // flat point layout

 private:
  SemidirectSpec spec_;
  std::vector<int> omega_of_point_;  // X-domain point -> (index i)
  std::vector<int> pos_of_point_;    // X-domain point -> position in omegas[i]
  std::vector<int> block_start_;     // per i, start offset of its blocks
  int perm_degree_ = 0;
  mutable std::shared_ptr<GroupTable> table_;
};

// Report for a constructed or classified subgroup of an enumerated Y.
struct SubgroupReport {
  Subgroup M;
  Int index;
  bool proper = false;
  bool clean = false;
  bool surjects_onto_x = false;
  bool maximal_checked = false;
  bool maximal = false;
  std::string case_tag;  // graph_iso | subdiagonal | normalizer_T | section | none
  std::string note;
};

// Largest product of per-factor normal subgroups contained in M.
struct CoreReport {
  std::vector<std::vector<elem_t>> factor_cores;  // per i, elements within B_i's table
  Subgroup core;
  bool clean = false;  // core is trivial
};
CoreReport standard_core(const Semidirect& Y, const Subgroup& M);

bool is_maximal_exhaustive(const GroupTable& G, const Subgroup& M);
SubgroupReport classify_maximal(const Semidirect& Y, const Subgroup& M);

// Case 1 (t = 2): the normalizer of a twisted-diagonal graph subgroup.
struct GraphIsoData {
  std::vector<int> sigma;        // position in Omega_1 -> position in Omega_2
  std::vector<GroupHom> phi;     // per position in Omega_1, iso B_1 -> B_2 tables
};
SubgroupReport construct_graph_iso(const Semidirect& Y, const GraphIsoData& data);

struct GraphIsoCount {
  std::size_t count = 0;  // Y-classes of clean proper maximal graph subgroups
  Int bound;              // |Out(B_1)| * #{v : Stab_X(v) = Stab_X(v_1)}
  bool within_bound = false;
};
GraphIsoCount count_graph_iso_classes(const Semidirect& Y, std::size_t lattice_cap = 5000);

// Case 2 (t = 1, B = T^r): subdiagonal subgroups from an X-invariant partition
// of r copies of Omega into blocks of size >= 2, with a conjugating twist at
// every copy.  Index in T^(r Omega) is |T|^(sum (|A|-1)).
struct SubdiagonalSpec {
  PermGroup X;
  PermGroup T;  // nontrivial perfect; acts on the leaf domain
  int r = 1;
  std::vector<std::vector<int>> partition;  // blocks of {0..r*|Omega|-1}, idx = c*|Omega|+pos
  std::vector<Permutation> twists;          // per copy-point, normalizes T
};
struct SubdiagonalResult {
  PermGroup H;          // inside the flat realization of T^(r Omega)
  Int index;            // [T^(r Omega) : H]
  Int expected_index;   // |T|^(sum (|A|-1))
  std::optional<SubgroupReport> report;  // filled when Y is small enough to enumerate
};
SubdiagonalResult construct_subdiagonal(const SubdiagonalSpec& sd, std::size_t enum_cap = 20000);

// Case 3 (t = 1): M = N_Y(T^Omega) for e < T < B.
SubgroupReport construct_normalizer_t(const Semidirect& Y, const PermGroup& T);

// Sections of X inside an enumerated Y: homomorphisms s with pi . s = id.
Int count_sections(const Semidirect& Y);

// Number of partitions of r disjoint copies of Omega into X-invariant blocks
// of size >= 2 is at most (2|Omega|)^(r-1) * a^r where a counts such
// partitions of one copy.
struct PartitionCount {
  Int exact;
  Int bound;
  bool within_bound = false;
};
PartitionCount count_invariant_partitions(const PermGroup& X, int r, std::size_t domain_cap = 12);

}  // namespace wp
