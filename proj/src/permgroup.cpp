#include "wp/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace wp {

namespace {

ChainLevel make_level(int degree, int base) {
  ChainLevel lvl;
  lvl.base_point = base;
  lvl.orbit = {base};
  lvl.trans.assign((size_t)degree, std::nullopt);
  lvl.trans[(size_t)base] = Permutation::identity(degree);
  return lvl;
}

}  // namespace

// Per-level Schreier bookkeeping: how many (orbit point, generator) pairs
// have already been processed.  Orbit arrays and generator lists only ever
// append, so a rectangle of processed pairs suffices.
struct SchreierCursor {
  std::size_t orbit_done = 0;
  std::size_t gens_done = 0;
};

namespace {
thread_local std::vector<SchreierCursor>* g_cursors = nullptr;
}

StabilizerChain StabilizerChain::build(int degree, const std::vector<Permutation>& gens) {
  return build_with_base(degree, gens, {});
}

StabilizerChain StabilizerChain::build_with_base(int degree,
                                                 const std::vector<Permutation>& gens,
                                                 const std::vector<int>& base_hint) {
  StabilizerChain c;
  c.degree_ = degree;
  c.base_hint_ = base_hint;
  std::vector<SchreierCursor> cursors;
  g_cursors = &cursors;
  for (const auto& g : gens) {
    require_input(g.degree() == degree, "generator degree mismatch");
    if (!g.is_identity()) c.insert(g, 0);
  }
  g_cursors = nullptr;
  c.recompute_order();
  return c;
}

StabilizerChain StabilizerChain::from_parts(int degree, std::vector<ChainLevel> levels) {
  StabilizerChain c;
  c.degree_ = degree;
  for (const auto& lv : levels) {
    require_input(lv.base_point >= 0 && lv.base_point < degree, "base point out of range");
    require_input(!lv.orbit.empty() && lv.orbit[0] == lv.base_point,
                  "orbit must start at the base point");
    for (int p : lv.orbit) {
      require_input(p >= 0 && p < degree && lv.trans[(size_t)p].has_value(),
                    "missing transversal entry");
      require_input((*lv.trans[(size_t)p])(lv.base_point) == p, "bad transversal entry");
    }
  }
  c.levels_ = std::move(levels);
  c.recompute_order();
  return c;
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(Permutation x,
                                                          std::size_t from_level) const {
  for (std::size_t l = from_level; l < levels_.size(); ++l) {
    int p = x(levels_[l].base_point);
    if (!levels_[l].trans[(size_t)p]) return {std::move(x), l};
    x = levels_[l].trans[(size_t)p]->inverse() * x;
  }
  return {std::move(x), levels_.size()};
}

void StabilizerChain::insert(const Permutation& g, std::size_t from_level) {
  auto [r, l] = sift(g, from_level);
  if (r.is_identity()) return;
  // Walk down to a level whose base point r moves, creating levels as needed
  // (hinted bases may be fixed by r; skip past them).
  for (;;) {
    if (l == levels_.size()) {
      int b = (l < base_hint_.size()) ? base_hint_[l] : r.first_moved();
      levels_.push_back(make_level(degree_, b));
      g_cursors->push_back(SchreierCursor{});
    }
    if (r(levels_[l].base_point) != levels_[l].base_point) break;
    ++l;
  }
  // r fixes the base points of levels < from_level..l, so it is a strong
  // generator at every level in [from_level, l].
  for (std::size_t m = from_level; m <= l; ++m) levels_[m].gens.push_back(r);
  // Re-close the touched levels, deepest first.  Recursive inserts only ever
  // modify levels >= m+1, so the orbit and generator lists at level m are
  // stable while its rectangle of (orbit point, generator) pairs is swept.
  for (std::size_t m = l + 1; m-- > from_level;) {
    extend_orbit(m);
    // No references across the recursive insert: it can reallocate both
    // levels_ and the cursor vector by creating new levels.
    std::size_t odone = (*g_cursors)[m].orbit_done;
    std::size_t gdone = (*g_cursors)[m].gens_done;
    std::size_t O = levels_[m].orbit.size();
    std::size_t G = levels_[m].gens.size();
    for (std::size_t i = 0; i < O; ++i) {
      for (std::size_t j = 0; j < G; ++j) {
        if (i < odone && j < gdone) continue;
        int p = levels_[m].orbit[i];
        Permutation s = levels_[m].gens[j];
        Permutation sch =
            levels_[m].trans[(size_t)s(p)]->inverse() * (s * *levels_[m].trans[(size_t)p]);
        if (!sch.is_identity()) insert(sch, m + 1);
      }
    }
    (*g_cursors)[m].orbit_done = O;
    (*g_cursors)[m].gens_done = G;
  }
}

void StabilizerChain::extend_orbit(std::size_t level) {
  auto& lvl = levels_[level];
  for (std::size_t i = 0; i < lvl.orbit.size(); ++i) {
    int p = lvl.orbit[i];
    for (const auto& s : lvl.gens) {
      int q = s(p);
      if (!lvl.trans[(size_t)q]) {
        lvl.trans[(size_t)q] = s * *lvl.trans[(size_t)p];
        lvl.orbit.push_back(q);
      }
    }
  }
}

void StabilizerChain::recompute_order() {
  order_ = 1;
  for (const auto& lvl : levels_) order_ *= (Int)lvl.orbit.size();
}

std::vector<int> StabilizerChain::base() const {
  std::vector<int> b;
  for (const auto& lvl : levels_) b.push_back(lvl.base_point);
  return b;
}

bool StabilizerChain::contains(const Permutation& x) const {
  require_input(x.degree() == degree_, "degree mismatch in membership test");
  auto [r, l] = sift(x, 0);
  (void)l;
  return r.is_identity();
}

Permutation StabilizerChain::random_element(RngStream& rng) const {
  Permutation x = Permutation::identity(degree_);
  for (std::size_t l = levels_.size(); l-- > 0;) {
    const auto& lvl = levels_[l];
    int p = lvl.orbit[(size_t)rng.below(lvl.orbit.size())];
    x = *lvl.trans[(size_t)p] * x;
  }
  return x;
}

std::vector<Permutation> StabilizerChain::stabilizer_gens(std::size_t level) const {
  std::vector<Permutation> out;
  for (std::size_t l = level; l < levels_.size(); ++l)
    out.insert(out.end(), levels_[l].gens.begin(), levels_[l].gens.end());
  return out;
}

PermGroup::PermGroup(int degree, std::vector<Permutation> generators)
    : degree_(degree), gens_(std::move(generators)) {
  require_input(degree >= 0, "negative degree");
  for (const auto& g : gens_)
    require_input(g.degree() == degree, "generator degree mismatch");
}

const StabilizerChain& PermGroup::chain() const {
  if (!chain_)
    chain_ = std::make_shared<const StabilizerChain>(StabilizerChain::build(degree_, gens_));
  return *chain_;
}

std::vector<int> PermGroup::orbit(int p) const {
  require_input(p >= 0 && p < degree_, "orbit: point out of range");
  std::vector<int> orb = {p};
  std::vector<char> seen((size_t)degree_, 0);
  seen[(size_t)p] = 1;
  for (std::size_t i = 0; i < orb.size(); ++i) {
    for (const auto& g : gens_) {
      int q = g(orb[i]);
      if (!seen[(size_t)q]) {
        seen[(size_t)q] = 1;
        orb.push_back(q);
      }
    }
  }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen((size_t)degree_, 0);
  for (int p = 0; p < degree_; ++p) {
    if (seen[(size_t)p]) continue;
    auto orb = orbit(p);
    for (int q : orb) seen[(size_t)q] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

PermGroup normal_closure(const PermGroup& g, std::vector<Permutation> seeds) {
  std::vector<Permutation> S;
  for (auto& s : seeds)
    if (!s.is_identity()) S.push_back(std::move(s));
  if (S.empty()) return PermGroup(g.degree(), {});
  StabilizerChain chain = StabilizerChain::build(g.degree(), S);
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (const auto& t : g.generators()) {
      Permutation c = S[i].conjugated_by(t);
      if (!chain.contains(c)) {
        S.push_back(c);
        chain = StabilizerChain::build(g.degree(), S);
      }
    }
  }
  return PermGroup(g.degree(), std::move(S));
}

PermGroup PermGroup::derived_subgroup() const {
  std::vector<Permutation> comms;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      Permutation c = gens_[i].inverse() * gens_[j].inverse() * gens_[i] * gens_[j];
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  }
  return normal_closure(*this, std::move(comms));
}

bool PermGroup::is_perfect() const {
  if (gens_.empty()) return true;  // trivial group is its own derived subgroup
  return derived_subgroup().order() == order();
}

PermGroup PermGroup::point_stabilizer(int p) const {
  require_input(p >= 0 && p < degree_, "stabilizer: point out of range");
  StabilizerChain c = StabilizerChain::build_with_base(degree_, gens_, {p});
  if (c.levels().empty() || c.levels()[0].base_point != p)
    return PermGroup(degree_, gens_);  // whole group fixes p (or is trivial)
  return PermGroup(degree_, c.stabilizer_gens(1));
}

PermGroup PermGroup::restricted_to(const std::vector<int>& points) const {
  std::vector<int> pos((size_t)degree_, -1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_input(points[i] >= 0 && points[i] < degree_, "restriction point out of range");
    pos[(size_t)points[i]] = (int)i;
  }
  std::vector<Permutation> gens;
  for (const auto& g : gens_) {
    std::vector<int> img(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      int q = g(points[i]);
      require_input(pos[(size_t)q] >= 0, "restriction set is not invariant");
      img[i] = pos[(size_t)q];
    }
    gens.emplace_back(std::move(img));
  }
  return PermGroup((int)points.size(), std::move(gens));
}

namespace {

// Visit all set partitions of {0..n-1} as restricted growth strings.
template <typename F>
void for_each_partition(int n, F&& visit) {
  if (n == 0) {
    std::vector<int> empty;
    visit(empty);
    return;
  }
  std::vector<int> rgs((size_t)n, 0), maxv((size_t)n, 0);
  for (;;) {
    visit(rgs);
    int i = n - 1;
    while (i > 0 && rgs[(size_t)i] == maxv[(size_t)i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[(size_t)i];
    maxv[(size_t)i] = std::max(maxv[(size_t)i - 1], rgs[(size_t)i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[(size_t)j] = 0;
      maxv[(size_t)j] = maxv[(size_t)j - 1];
    }
  }
}

}  // namespace

std::vector<std::vector<std::vector<int>>> PermGroup::invariant_partitions(
    const std::vector<int>& domain, std::size_t cap) const {
  require_cap(domain.size() <= cap,
              "invariant_partitions: domain size " + std::to_string(domain.size()) +
                  " exceeds exhaustive cap " + std::to_string(cap));
  std::vector<int> pos((size_t)degree_, -1);
  for (std::size_t i = 0; i < domain.size(); ++i) pos[(size_t)domain[i]] = (int)i;
  std::vector<std::vector<int>> gen_pos;  // generator action in domain positions
  for (const auto& g : gens_) {
    std::vector<int> m(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
      int q = g(domain[i]);
      require_input(pos[(size_t)q] >= 0, "invariant_partitions: domain not invariant");
      m[i] = pos[(size_t)q];
    }
    gen_pos.push_back(std::move(m));
  }
  const int n = (int)domain.size();
  std::vector<std::vector<std::vector<int>>> result;
  std::vector<int> target;
  for_each_partition(n, [&](const std::vector<int>& rgs) {
    for (const auto& gp : gen_pos) {
      int nb = *std::max_element(rgs.begin(), rgs.end()) + 1;
      target.assign((size_t)nb, -1);
      for (int i = 0; i < n; ++i) {
        int src = rgs[(size_t)i], dst = rgs[(size_t)gp[(size_t)i]];
        if (target[(size_t)src] == -1)
          target[(size_t)src] = dst;
        else if (target[(size_t)src] != dst)
          return;
      }
    }
    int nb = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<int>> blocks((size_t)nb);
    for (int i = 0; i < n; ++i) blocks[(size_t)rgs[(size_t)i]].push_back(domain[(size_t)i]);
    result.push_back(std::move(blocks));
  });
  return result;
}

}  // namespace wp
