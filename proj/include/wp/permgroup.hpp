#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wp/numeric.hpp"
#include "wp/perm.hpp"
#include "wp/rng.hpp"

namespace wp {

// One level of a stabilizer chain: a base point, the basic orbit, a
// transversal (coset representatives u with u(base) = point) and the strong
// generators living at this level and below.
struct ChainLevel {
  int base_point = -1;
  std::vector<int> orbit;                          // discovery order, orbit[0] == base_point
  std::vector<std::optional<Permutation>> trans;   // indexed by point
  std::vector<Permutation> gens;                   // generators fixing all earlier base points
};

class PermGroup;

// Deterministic Schreier-Sims stabilizer chain.  Base rule: smallest point
// moved by some generator at the current level.
class StabilizerChain {
 public:
  static StabilizerChain build(int degree, const std::vector<Permutation>& gens);
  // Force the first base point (used for point stabilizers).
  static StabilizerChain build_with_base(int degree, const std::vector<Permutation>& gens,
                                         const std::vector<int>& base_hint);
  // Reassemble a previously built chain (used by the cache).  Levels are
  // taken as-is; the order is recomputed from the orbit sizes.
  static StabilizerChain from_parts(int degree, std::vector<ChainLevel> levels);

  int degree() const { return degree_; }
  const Int& order() const { return order_; }
  const std::vector<ChainLevel>& levels() const { return levels_; }
  std::vector<int> base() const;

  bool contains(const Permutation& x) const;
  // Exactly uniform: one uniform transversal pick per level.
  Permutation random_element(RngStream& rng) const;

  // Strong generators fixing base points 0..level-1 (generators of the
  // level-th stabilizer subgroup).
  std::vector<Permutation> stabilizer_gens(std::size_t level) const;

 private:
  StabilizerChain() = default;
  void insert(const Permutation& g, std::size_t from_level);
  void extend_orbit(std::size_t level);
  // Returns residue and the level at which sifting stopped.
  std::pair<Permutation, std::size_t> sift(Permutation x, std::size_t from_level) const;
  void recompute_order();

  int degree_ = 0;
  std::vector<ChainLevel> levels_;
  Int order_ = 1;
  std::vector<int> base_hint_;
};

// A permutation group given by generators, with a lazily built chain.
// Immutable after construction.
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Permutation> generators);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  const StabilizerChain& chain() const;
  const Int& order() const { return chain().order(); }
  bool contains(const Permutation& x) const { return chain().contains(x); }

  std::vector<int> orbit(int p) const;
  std::vector<std::vector<int>> orbits() const;  // ordered by smallest point

  // Derived subgroup: normal closure of pairwise generator commutators.
  PermGroup derived_subgroup() const;
  bool is_perfect() const;

  // Generators of the stabilizer of p (chain with forced first base point).
  PermGroup point_stabilizer(int p) const;

  // Restrict to an invariant point set, relabelling points 0..|points|-1.
  PermGroup restricted_to(const std::vector<int>& points) const;

  // All set partitions of `domain` preserved blockwise by every generator.
  // Each partition is a list of blocks (sorted).  Throws cap_error when
  // |domain| exceeds the cap.
  std::vector<std::vector<std::vector<int>>> invariant_partitions(
      const std::vector<int>& domain, std::size_t cap = 12) const;

 private:
  int degree_;
  std::vector<Permutation> gens_;
  mutable std::shared_ptr<const StabilizerChain> chain_;
};

// Normal closure of <seeds> under conjugation by group generators.
PermGroup normal_closure(const PermGroup& g, std::vector<Permutation> seeds);

}  // namespace wp
