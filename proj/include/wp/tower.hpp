#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "wp/permgroup.hpp"
#include "wp/table.hpp"

namespace wp {

// Quotient of an enumerated group by a normal subgroup, realized as the
// left-regular action on cosets, together with the projection map.
struct Quotient {
  std::shared_ptr<GroupTable> table;
  std::vector<elem_t> proj;  // source element index -> quotient element index

  GroupHom hom(const GroupTable& src) const { return GroupHom{&src, table.get(), proj}; }
};
Quotient quotient_by(const GroupTable& G, const Subgroup& N);

// Defining data of the tower L_1 = L, L_{n+1} = L_n x| L^(D^n).
struct TowerSpec {
  PermGroup base;                        // L acting on D = {0..|D|-1}
  std::vector<std::vector<int>> orbits;  // partition of D into L-orbits

  static TowerSpec make(PermGroup L);
  int dsize() const { return base.degree(); }
  int ell() const { return (int)orbits.size(); }
};

// Structured element of L_n: a pair (top in L_{n-1}, leaf map D^{n-1} -> L).
// Level-1 elements hold a plain permutation of D.
class WreathElement {
 public:
  static WreathElement level1(const TowerSpec& spec, Permutation x);
  static WreathElement pair(const TowerSpec& spec, WreathElement top,
                            std::vector<Permutation> leaves);
  static WreathElement identity(const TowerSpec& spec, int level);
  static WreathElement random(const TowerSpec& spec, int level, RngStream& rng);

  int level() const { return level_; }
  const WreathElement& top() const;
  const std::vector<Permutation>& leaves() const { return leaves_; }
  const Permutation& base_perm() const;  // level-1 content

  // (x1,f1)(x2,f2) = (x1 x2, f1^{x2} f2) with f^{x2}(w) = f(x2 w).
  WreathElement mult(const WreathElement& rhs) const;
  // Action on words: image of the length-`level` word.
  std::vector<int> word_image(const std::vector<int>& w) const;
  // (x,f)(v,j) = (x(v), f(v) j) for v in D^{n-1}, j in D.
  std::pair<std::vector<int>, int> act(const std::vector<int>& v, int j) const;
  // Flat permutation on |D|^level points under the word encoding.
  Permutation to_permutation() const;

  bool operator==(const WreathElement& rhs) const;

 private:
  WreathElement(const TowerSpec* spec, int level) : spec_(spec), level_(level) {}
  const TowerSpec* spec_;
  int level_;
  std::shared_ptr<const WreathElement> top_;  // null iff level == 1
  std::optional<Permutation> x_;              // level-1 only
  std::vector<Permutation> leaves_;           // size |D|^(level-1), level >= 2
};

// Word (a_1..a_n) -> sum a_m |D|^(n-m); first letter most significant.
int encode_word(const std::vector<int>& w, int d);
std::vector<int> decode_word(int code, int d, int len);

// L_n as a permutation group on D^n.
PermGroup build_level(const TowerSpec& spec, int n, std::size_t degree_cap = 10000);

// Quotient map L_{n+1} -> A, (x,f) |-> prod_v pi(f(v)), for pi: L -> A with A
// abelian.  Verified multiplicative on `check_pairs` random pairs.
struct AbelianizationWitness {
  std::shared_ptr<GroupTable> ltable;
  Quotient pi;  // onto A
  int level = 0;  // n+1
  std::size_t pairs_checked = 0;
  bool multiplicative = false;
  bool surjective = false;

  elem_t eval(const WreathElement& e) const;
};
AbelianizationWitness abelianization_witness(const TowerSpec& spec, int n,
                                             std::shared_ptr<GroupTable> ltable,
                                             const Quotient& pi, std::size_t check_pairs = 1000,
                                             std::uint64_t seed = 1);
// Computes L's abelianization itself; nullopt when L is perfect.
std::optional<AbelianizationWitness> maybe_abelianization_witness(const TowerSpec& spec, int n,
                                                                  std::size_t table_cap = 8192,
                                                                  std::size_t check_pairs = 1000,
                                                                  std::uint64_t seed = 1);

// Quotient map L_{n+1} -> L_n x L, (x,f) |-> (x, f(j,...,j)) for an L-fixed j.
struct FixedPointWitness {
  int fixed_point = -1;
  int level = 0;  // n+1
  std::size_t pairs_checked = 0;
  bool multiplicative = false;

  std::pair<WreathElement, Permutation> eval(const WreathElement& e) const;
  const TowerSpec* spec = nullptr;
};
FixedPointWitness fixed_point_witness(const TowerSpec& spec, int n, int j,
                                      std::size_t check_pairs = 1000, std::uint64_t seed = 1);
// First L-fixed point, if any.
std::optional<int> find_fixed_point(const TowerSpec& spec);

}  // namespace wp
