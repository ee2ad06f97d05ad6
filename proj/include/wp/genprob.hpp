#pragma once

#include <string>
#include <vector>

#include "wp/lattice.hpp"
#include "wp/permgroup.hpp"
#include "wp/rng.hpp"
#include "wp/table.hpp"

namespace wp {

// Two-sided Wilson score interval with z = 49/25, widened outward so the
// endpoints are exact rational bounds.
std::pair<Rat, Rat> wilson_interval(std::uint64_t successes, std::uint64_t samples);

struct PkResult {
  std::string mode;  // "exact" | "montecarlo"
  Rat value;         // exact value, or successes/samples
  Rat low, high;     // Wilson interval (value, value for exact mode)
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
};

// Probability that k independent uniform elements generate, by enumerating
// all |G|^k tuples.  Throws cap_error when |G|^k exceeds the tuple cap.
Rat pk_exact_exhaustive(const GroupTable& G, unsigned k, const Int& tuple_cap = Int(10000000));

PkResult pk_montecarlo(const PermGroup& G, unsigned k, std::uint64_t samples,
                       std::uint64_t seed);

struct ZetaTerm {
  int rep_node = -1;
  Int index;
  std::size_t class_size = 0;
  Rat term;
};
struct ZetaValue {
  std::vector<ZetaTerm> terms;
  Rat total;
};

// zeta_{Y|X}(s): sum of [Y:M]^-s over Y-classes of proper maximal M that
// surject onto X under pi.
ZetaValue zeta(const SubgroupLattice& ly, const GroupHom& pi, unsigned s);
// X trivial: every maximal class contributes.
ZetaValue zeta_all_maximal(const SubgroupLattice& ly, unsigned s);

struct RelativeBound {
  Rat pk_y, pk_x, zeta_km1, rhs;
  bool holds = false;
  Rat slack;  // pk_y - rhs
};
// Checks p_k(Y) >= (1 - zeta_{Y|X}(k-1)) p_k(X) with exact values.
RelativeBound relative_pk_bound(const SubgroupLattice& ly, const SubgroupLattice& lx,
                                const GroupHom& pi, unsigned k);

struct TailBound {
  bool positive = false;
  Rat value;
  std::string reason;
};
// Lower bound prod (1 - z_i) * (1 - tail) * pk_base; each z_i and the tail
// sum must be < 1 for a positive bound.
TailBound tail_product_bound(const std::vector<Rat>& zetas, const Rat& tail_sum,
                             const Rat& pk_base);

}  // namespace wp
