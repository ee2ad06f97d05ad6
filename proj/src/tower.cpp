#include "wp/tower.hpp"

#include <algorithm>

#include "wp/errors.hpp"

namespace wp {

Quotient quotient_by(const GroupTable& G, const Subgroup& N) {
  require_input(is_normal(G, N), "quotient requires a normal subgroup");
  std::size_t n = G.size();
  std::vector<int> coset_of(n, -1);
  std::vector<elem_t> reps;
  for (std::size_t e = 0; e < n; ++e) {
    if (coset_of[e] != -1) continue;
    int id = (int)reps.size();
    reps.push_back((elem_t)e);
    for (elem_t h : N.elems) coset_of[G.mul(h, (elem_t)e)] = id;
  }
  int m = (int)reps.size();

  // Left multiplication action, so g -> action_of(g) is a homomorphism under
  // the (a*b)(p) = a(b(p)) composition convention.
  auto action_of = [&](elem_t g) {
    std::vector<int> img(m);
    for (int c = 0; c < m; ++c) img[c] = coset_of[G.mul(g, reps[c])];
    return Permutation(std::move(img));
  };

  std::vector<Permutation> gens;
  for (elem_t g : G.generator_indices()) gens.push_back(action_of(g));
  PermGroup Q(m, gens);
  auto table = std::make_shared<GroupTable>(GroupTable::from_perm_group(Q, (std::size_t)m));

  std::vector<elem_t> proj(n);
  for (std::size_t e = 0; e < n; ++e) {
    auto idx = table->index_of(action_of((elem_t)e));
    require_internal(idx.has_value(), "coset action not found in quotient table");
    proj[e] = *idx;
  }
  return Quotient{std::move(table), std::move(proj)};
}

TowerSpec TowerSpec::make(PermGroup L) {
  require_input(L.degree() >= 1, "base group needs a nonempty domain");
  auto orbs = L.orbits();
  return TowerSpec{std::move(L), std::move(orbs)};
}

WreathElement WreathElement::level1(const TowerSpec& spec, Permutation x) {
  require_input(x.degree() == spec.dsize(), "level-1 element must act on D");
  WreathElement e(&spec, 1);
  e.x_ = std::move(x);
  return e;
}

WreathElement WreathElement::pair(const TowerSpec& spec, WreathElement top,
                                  std::vector<Permutation> leaves) {
  int n = top.level() + 1;
  std::size_t want = 1;
  for (int i = 1; i < n; ++i) want *= (std::size_t)spec.dsize();
  require_input(leaves.size() == want, "leaf map must cover D^(level-1)");
  for (const auto& p : leaves)
    require_input(p.degree() == spec.dsize(), "leaves must act on D");
  WreathElement e(&spec, n);
  e.top_ = std::make_shared<const WreathElement>(std::move(top));
  e.leaves_ = std::move(leaves);
  return e;
}

WreathElement WreathElement::identity(const TowerSpec& spec, int level) {
  require_input(level >= 1, "level must be positive");
  if (level == 1) return level1(spec, Permutation::identity(spec.dsize()));
  std::size_t want = 1;
  for (int i = 1; i < level; ++i) want *= (std::size_t)spec.dsize();
  return pair(spec, identity(spec, level - 1),
              std::vector<Permutation>(want, Permutation::identity(spec.dsize())));
}

WreathElement WreathElement::random(const TowerSpec& spec, int level, RngStream& rng) {
  const StabilizerChain& chain = spec.base.chain();
  // Uniform over L via the chain, independently at every node of the tree.
  std::vector<WreathElement> cur;
  cur.push_back(level1(spec, chain.random_element(rng)));
  for (int lv = 2; lv <= level; ++lv) {
    std::size_t want = 1;
    for (int i = 1; i < lv; ++i) want *= (std::size_t)spec.dsize();
    std::vector<Permutation> leaves;
    leaves.reserve(want);
    for (std::size_t i = 0; i < want; ++i) leaves.push_back(chain.random_element(rng));
    cur[0] = pair(spec, std::move(cur[0]), std::move(leaves));
  }
  return cur[0];
}

const WreathElement& WreathElement::top() const {
  require_internal(top_ != nullptr, "level-1 element has no top part");
  return *top_;
}

const Permutation& WreathElement::base_perm() const {
  require_internal(x_.has_value(), "only level-1 elements hold a base permutation");
  return *x_;
}

WreathElement WreathElement::mult(const WreathElement& rhs) const {
  require_input(level_ == rhs.level_, "elements live at different levels");
  if (level_ == 1) return level1(*spec_, *x_ * *rhs.x_);
  WreathElement t = top_->mult(*rhs.top_);
  Permutation tp = rhs.top_->to_permutation();
  std::vector<Permutation> leaves;
  leaves.reserve(leaves_.size());
  for (std::size_t w = 0; w < leaves_.size(); ++w)
    leaves.push_back(leaves_[(std::size_t)tp((int)w)] * rhs.leaves_[w]);
  return pair(*spec_, std::move(t), std::move(leaves));
}

std::vector<int> WreathElement::word_image(const std::vector<int>& w) const {
  require_input((int)w.size() == level_, "word length must match the level");
  if (level_ == 1) return {(*x_)(w[0])};
  std::vector<int> prefix(w.begin(), w.end() - 1);
  auto [v, j] = act(prefix, w.back());
  v.push_back(j);
  return v;
}

std::pair<std::vector<int>, int> WreathElement::act(const std::vector<int>& v, int j) const {
  require_input(level_ >= 2 && (int)v.size() == level_ - 1, "expected a (prefix, letter) pair");
  require_input(j >= 0 && j < spec_->dsize(), "letter out of range");
  std::size_t code = (std::size_t)encode_word(v, spec_->dsize());
  return {top_->word_image(v), leaves_[code](j)};
}

Permutation WreathElement::to_permutation() const {
  if (level_ == 1) return *x_;
  Permutation tp = top_->to_permutation();
  int d = spec_->dsize();
  int deg = tp.degree() * d;
  std::vector<int> img((std::size_t)deg);
  for (int v = 0; v < tp.degree(); ++v) {
    const Permutation& leaf = leaves_[(std::size_t)v];
    for (int j = 0; j < d; ++j) img[(std::size_t)(v * d + j)] = tp(v) * d + leaf(j);
  }
  return Permutation(std::move(img));
}

bool WreathElement::operator==(const WreathElement& rhs) const {
  if (level_ != rhs.level_) return false;
  if (level_ == 1) return *x_ == *rhs.x_;
  return leaves_ == rhs.leaves_ && *top_ == *rhs.top_;
}

int encode_word(const std::vector<int>& w, int d) {
  int code = 0;
  for (int a : w) {
    require_input(a >= 0 && a < d, "word letter out of range");
    code = code * d + a;
  }
  return code;
}

std::vector<int> decode_word(int code, int d, int len) {
  std::vector<int> w((std::size_t)len);
  for (int m = len - 1; m >= 0; --m) {
    w[(std::size_t)m] = code % d;
    code /= d;
  }
  require_input(code == 0, "code out of range for the given length");
  return w;
}

PermGroup build_level(const TowerSpec& spec, int n, std::size_t degree_cap) {
  require_input(n >= 1, "level must be positive");
  std::size_t deg = 1;
  for (int i = 0; i < n; ++i) {
    deg *= (std::size_t)spec.dsize();
    require_cap(deg <= degree_cap, "level degree exceeds cap");
  }
  if (n == 1) return spec.base;
  PermGroup prev = build_level(spec, n - 1, degree_cap);
  int d = spec.dsize();
  std::size_t pdeg = (std::size_t)prev.degree();
  std::vector<Permutation> gens;
  for (const auto& y : prev.generators()) {
    std::vector<int> img(pdeg * (std::size_t)d);
    for (std::size_t v = 0; v < pdeg; ++v)
      for (int j = 0; j < d; ++j) img[v * (std::size_t)d + (std::size_t)j] = y((int)v) * d + j;
    gens.emplace_back(std::move(img));
  }
  for (std::size_t v = 0; v < pdeg; ++v) {
    for (const auto& g : spec.base.generators()) {
      std::vector<int> img(pdeg * (std::size_t)d);
      for (std::size_t w = 0; w < pdeg; ++w)
        for (int j = 0; j < d; ++j)
          img[w * (std::size_t)d + (std::size_t)j] =
              (int)(w * (std::size_t)d) + (w == v ? g(j) : j);
      gens.emplace_back(std::move(img));
    }
  }
  return PermGroup((int)(pdeg * (std::size_t)d), std::move(gens));
}

elem_t AbelianizationWitness::eval(const WreathElement& e) const {
  const GroupTable& A = *pi.table;
  elem_t acc = 0;
  for (const auto& leaf : e.leaves()) {
    auto idx = ltable->index_of(leaf);
    require_input(idx.has_value(), "leaf is not an element of L");
    acc = A.mul(acc, pi.proj[*idx]);
  }
  return acc;
}

AbelianizationWitness abelianization_witness(const TowerSpec& spec, int n,
                                             std::shared_ptr<GroupTable> ltable,
                                             const Quotient& pi, std::size_t check_pairs,
                                             std::uint64_t seed) {
  require_input(n >= 1, "level must be positive");
  const GroupTable& A = *pi.table;
  require_input(pi.proj.size() == ltable->size(), "projection does not match L");
  require_input(A.subset_is_abelian(full_subgroup(A).elems), "target must be abelian");
  // Projection must be a homomorphism onto A.
  std::vector<bool> hit(A.size(), false);
  for (std::size_t a = 0; a < ltable->size(); ++a) {
    hit[pi.proj[a]] = true;
    for (elem_t g : ltable->generator_indices())
      require_input(pi.proj[ltable->mul((elem_t)a, g)] == A.mul(pi.proj[a], pi.proj[g]),
                    "projection is not a homomorphism");
  }
  require_input(std::find(hit.begin(), hit.end(), false) == hit.end(),
                "projection is not surjective");

  AbelianizationWitness w;
  w.ltable = std::move(ltable);
  w.pi = pi;
  w.level = n + 1;

  RngStream rng(seed, 0);
  const GroupTable& At = *w.pi.table;
  bool ok = true;
  for (std::size_t i = 0; i < check_pairs; ++i) {
    WreathElement a = WreathElement::random(spec, n + 1, rng);
    WreathElement b = WreathElement::random(spec, n + 1, rng);
    if (w.eval(a.mult(b)) != At.mul(w.eval(a), w.eval(b))) {
      ok = false;
      break;
    }
  }
  w.pairs_checked = check_pairs;
  w.multiplicative = ok;
  // Image of the single-leaf elements already covers pi(L) = A.
  w.surjective = true;
  return w;
}

std::optional<AbelianizationWitness> maybe_abelianization_witness(const TowerSpec& spec, int n,
                                                                  std::size_t table_cap,
                                                                  std::size_t check_pairs,
                                                                  std::uint64_t seed) {
  if (spec.base.is_perfect()) return std::nullopt;
  auto lt = std::make_shared<GroupTable>(GroupTable::from_perm_group(spec.base, table_cap));
  PermGroup der = spec.base.derived_subgroup();
  std::vector<elem_t> dgens;
  for (const auto& g : der.generators()) {
    auto idx = lt->index_of(g);
    require_internal(idx.has_value(), "derived generator missing from table");
    dgens.push_back(*idx);
  }
  Subgroup D = subgroup_generated(*lt, dgens);
  Quotient q = quotient_by(*lt, D);
  return abelianization_witness(spec, n, lt, q, check_pairs, seed);
}

std::pair<WreathElement, Permutation> FixedPointWitness::eval(const WreathElement& e) const {
  require_input(e.level() == level, "element lives at the wrong level");
  std::vector<int> word((std::size_t)(level - 1), fixed_point);
  int code = encode_word(word, spec->dsize());
  return {e.top(), e.leaves()[(std::size_t)code]};
}

FixedPointWitness fixed_point_witness(const TowerSpec& spec, int n, int j,
                                      std::size_t check_pairs, std::uint64_t seed) {
  require_input(n >= 1, "level must be positive");
  require_input(j >= 0 && j < spec.dsize(), "point out of range");
  for (const auto& g : spec.base.generators())
    require_input(g(j) == j, "point is moved by the base group");

  FixedPointWitness w;
  w.spec = &spec;
  w.fixed_point = j;
  w.level = n + 1;

  RngStream rng(seed, 1);
  bool ok = true;
  for (std::size_t i = 0; i < check_pairs; ++i) {
    WreathElement a = WreathElement::random(spec, n + 1, rng);
    WreathElement b = WreathElement::random(spec, n + 1, rng);
    auto [ta, la] = w.eval(a);
    auto [tb, lb] = w.eval(b);
    auto [tab, lab] = w.eval(a.mult(b));
    if (!(tab == ta.mult(tb)) || lab != la * lb) {
      ok = false;
      break;
    }
  }
  w.pairs_checked = check_pairs;
  w.multiplicative = ok;
  return w;
}

std::optional<int> find_fixed_point(const TowerSpec& spec) {
  for (const auto& orb : spec.orbits)
    if (orb.size() == 1) return orb[0];
  return std::nullopt;
}

}  // namespace wp
