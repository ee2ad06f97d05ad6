#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "wp/certify.hpp"
#include "wp/errors.hpp"
#include "wp/genprob.hpp"
#include "wp/io.hpp"
#include "wp/lattice.hpp"
#include "wp/semidirect.hpp"
#include "wp/tower.hpp"

namespace {

using wp::Json;

struct Options {
  std::string format = "json";
  std::string cache_dir;
  int threads = 1;
  bool have_cache_dir = false;
};

void emit(const Json& j, const Options& opt) {
  if (opt.format == "table") {
    for (const auto& [key, val] : j.items()) {
      if (val.is_structured())
        std::cout << key << ": " << val.dump() << "\n";
      else if (val.is_string())
        std::cout << key << ": " << val.get<std::string>() << "\n";
      else
        std::cout << key << ": " << val.dump() << "\n";
    }
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

wp::Cache make_cache(const Options& opt) {
  if (opt.have_cache_dir) return wp::Cache(opt.cache_dir);
  return wp::Cache::from_env();
}

// Stabilizer chain with a verified persistent cache: a hit is used only after
// the payload's chain contains every generator and reports the same order a
// fresh build would trust, so hit and miss agree.
const wp::StabilizerChain& cached_chain(const wp::PermGroup& g, const wp::Cache& cache) {
  if (!cache.enabled()) return g.chain();
  std::uint64_t key = wp::content_hash(wp::group_to_json(g));
  if (auto j = cache.load("chain", key))
    if (auto chain = wp::chain_from_json(*j, g.generators())) {
      static thread_local std::vector<wp::StabilizerChain> kept;
      if (chain->order() == g.order()) {
        kept.push_back(std::move(*chain));
        return kept.back();
      }
    }
  cache.store("chain", key, wp::chain_to_json(g.chain()));
  return g.chain();
}

std::map<std::string, wp::Int> parse_overrides(const std::vector<std::string>& raw) {
  std::map<std::string, wp::Int> out;
  for (const auto& s : raw) {
    auto eq = s.find('=');
    wp::require_input(eq != std::string::npos && eq > 0 && eq + 1 < s.size(),
                      "override must look like C7=1000000");
    try {
      out[s.substr(0, eq)] = wp::Int(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw wp::input_error("override value is not an integer: " + s);
    }
  }
  return out;
}

int cmd_decide(const std::string& group_file, std::size_t pairs, std::uint64_t seed,
               bool universal, const Options& opt) {
  wp::PermGroup g = wp::load_group_file(group_file);
  wp::Verdict v = universal ? wp::decide_universal(g, pairs, seed)
                            : wp::decide(wp::TowerSpec::make(std::move(g)), pairs, seed);
  Json j = wp::verdict_to_json(v);
  j["decision"] = v.yes ? "YES" : "NO";
  emit(j, opt);
  return 0;
}

int cmd_tower(const std::string& action, const std::string& group_file, int n,
              std::uint64_t seed, std::uint64_t count, const Options& opt) {
  wp::PermGroup g = wp::load_group_file(group_file);
  wp::TowerSpec spec = wp::TowerSpec::make(std::move(g));
  Json j;
  j["schema"] = "tower/1";
  j["action"] = action;
  j["n"] = n;
  if (action == "build") {
    wp::Cache cache = make_cache(opt);
    wp::PermGroup ln = wp::build_level(spec, n);
    const wp::StabilizerChain& chain = cached_chain(ln, cache);
    j["degree"] = ln.degree();
    j["generator_count"] = (std::uint64_t)ln.generators().size();
    j["order"] = chain.order().str();
  } else if (action == "mult" || action == "verify") {
    wp::RngStream rng(seed, 0);
    std::uint64_t ok = 0;
    std::string sample;
    for (std::uint64_t i = 0; i < count; ++i) {
      wp::WreathElement a = wp::WreathElement::random(spec, n, rng);
      wp::WreathElement b = wp::WreathElement::random(spec, n, rng);
      wp::WreathElement ab = a.mult(b);
      if (ab.to_permutation() == a.to_permutation() * b.to_permutation()) ++ok;
      if (i == 0) sample = ab.to_permutation().to_cycles();
    }
    j["pairs"] = count;
    j["product_rule_ok"] = ok;
    j["seed"] = seed;
    if (!sample.empty()) j["first_product"] = sample;
    wp::require_internal(ok == count, "structured product disagreed with composition");
  } else {
    throw wp::input_error("tower action must be build, mult or verify");
  }
  emit(j, opt);
  return 0;
}

int cmd_pk(const std::string& group_file, unsigned k, const std::string& mode,
           std::uint64_t samples, std::uint64_t seed, const Options& opt) {
  wp::PermGroup g = wp::load_group_file(group_file);
  wp::PkResult r;
  if (mode == "exact") {
    wp::GroupTable t = wp::GroupTable::from_perm_group(g);
    auto lat = wp::SubgroupLattice::build(t, t.size());
    r.mode = "exact";
    r.value = lat.pk_mobius(k);
    r.low = r.high = r.value;
  } else if (mode == "mc") {
    r = wp::pk_montecarlo(g, k, samples, seed);
  } else {
    throw wp::input_error("mode must be exact or mc");
  }
  Json j = wp::pk_to_json(r);
  j["k"] = k;
  emit(j, opt);
  return 0;
}

int cmd_zeta(const std::string& group_file, unsigned s, const Options& opt) {
  wp::PermGroup g = wp::load_group_file(group_file);
  wp::GroupTable t = wp::GroupTable::from_perm_group(g);
  auto lat = wp::SubgroupLattice::build(t, t.size());
  Json j = wp::zeta_to_json(wp::zeta_all_maximal(lat, s));
  j["s"] = s;
  emit(j, opt);
  return 0;
}

int cmd_maximal(const std::string& fixture_file, const Options& opt) {
  std::ifstream in(fixture_file);
  wp::require_input(in.good(), "cannot open " + fixture_file);
  Json fx;
  try {
    in >> fx;
  } catch (const std::exception& e) {
    throw wp::input_error(fixture_file + std::string(": ") + e.what());
  }
  wp::require_input(fx.contains("x") && fx.contains("omegas") && fx.contains("bases") &&
                        fx.contains("subgroup"),
                    "fixture needs \"x\", \"omegas\", \"bases\" and \"subgroup\"");
  std::vector<std::vector<int>> omegas;
  for (const auto& o : fx["omegas"]) omegas.push_back(o.get<std::vector<int>>());
  std::vector<wp::PermGroup> bases;
  for (const auto& b : fx["bases"]) bases.push_back(wp::group_from_json(b));
  wp::Semidirect Y(
      wp::SemidirectSpec::make(wp::group_from_json(fx["x"]), std::move(omegas), std::move(bases)));
  const wp::GroupTable& t = Y.table();
  std::vector<wp::elem_t> gens;
  for (const auto& gj : fx["subgroup"].at("generators")) {
    wp::Permutation p = wp::Permutation::from_cycles(gj.get<std::string>(), Y.perm_degree());
    auto idx = t.index_of(p);
    wp::require_input(idx.has_value(), "subgroup generator is not an element of Y");
    gens.push_back(*idx);
  }
  wp::Subgroup M = wp::subgroup_generated(t, gens);
  Json j = wp::subgroup_report_to_json(wp::classify_maximal(Y, M));
  j["y_order"] = Y.order().str();
  emit(j, opt);
  return 0;
}

int cmd_certify(const std::string& group_file, const std::vector<std::string>& overrides_raw,
                int horizon, std::uint64_t budget, std::uint64_t seed, const Options& opt) {
  wp::PermGroup g = wp::load_group_file(group_file);
  wp::TowerSpec spec = wp::TowerSpec::make(std::move(g));
  wp::CertifyOptions co;
  co.horizon = horizon;
  co.mc_budget = budget;
  co.seed = seed;
  emit(wp::certificate_to_json(wp::certified_k(spec, parse_overrides(overrides_raw), co)), opt);
  return 0;
}

int cmd_selftest(const Options& opt) {
  Json j;
  j["schema"] = "selftest/1";
  auto a5 = wp::PermGroup(5, {wp::Permutation::from_cycles("(0 1 2)", 5),
                              wp::Permutation::from_cycles("(0 1 2 3 4)", 5)});
  wp::require_internal(a5.order() == 60, "selftest: |A_5| != 60");
  j["a5_order"] = 60;

  wp::GroupTable t = wp::GroupTable::from_perm_group(a5);
  auto lat = wp::SubgroupLattice::build(t, t.size());
  wp::require_internal(lat.nodes().size() == 59, "selftest: A_5 subgroup count != 59");
  j["a5_subgroups"] = 59;
  wp::require_internal(lat.pk_mobius(2) == wp::Rat(19, 30), "selftest: p_2(A_5) != 19/30");
  j["p2_a5"] = "19/30";
  wp::require_internal(wp::zeta_all_maximal(lat, 1).total == wp::Rat(7, 15),
                       "selftest: zeta(1) != 7/15");
  j["zeta1_a5"] = "7/15";

  wp::TowerSpec spec = wp::TowerSpec::make(a5);
  wp::require_internal(wp::decide(spec, 16).yes, "selftest: decide(A_5, 5) != YES");
  wp::PermGroup l2 = wp::build_level(spec, 2);
  wp::require_internal(l2.order() == wp::int_pow(wp::Int(60), 6),
                       "selftest: |L_2| != 60^6");
  j["l2_order"] = l2.order().str();

  auto s3 = wp::PermGroup(3, {wp::Permutation::from_cycles("(0 1)", 3),
                              wp::Permutation::from_cycles("(0 1 2)", 3)});
  wp::require_internal(!wp::decide(wp::TowerSpec::make(s3), 16).yes,
                       "selftest: decide(S_3, 3) != NO");
  j["s3_decision"] = "NO";
  j["ok"] = true;
  emit(j, opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated wreath product toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.add_option("--cache-dir", opt.cache_dir,
                 "Cache directory (overrides WREATH_CACHE_DIR; empty disables)")
      ->each([&opt](const std::string&) { opt.have_cache_dir = true; });
  app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::Range(1, 256));

  std::string group_file, fixture_file, action, mode = "exact";
  unsigned k = 2, s = 1;
  int n = 2, horizon = 6;
  std::uint64_t seed = 1, samples = 10000, count = 100, budget = 100000, pairs = 1000;
  std::vector<std::string> overrides_raw;

  auto* decide = app.add_subcommand("decide", "Finite generation criterion for a tower base");
  decide->add_option("--group", group_file, "Group JSON file")->required();
  decide->add_option("--pairs", pairs, "Witness verification pairs");
  decide->add_option("--seed", seed, "RNG seed");

  auto* decide_u =
      app.add_subcommand("decide-universal", "Criterion for the universal group over F");
  decide_u->add_option("--group", group_file, "Group JSON file")->required();
  decide_u->add_option("--pairs", pairs, "Witness verification pairs");
  decide_u->add_option("--seed", seed, "RNG seed");

  auto* tower = app.add_subcommand("tower", "Build or exercise tower levels");
  tower->add_option("action", action, "build | mult | verify")->required();
  tower->add_option("--group", group_file, "Group JSON file")->required();
  tower->add_option("--n", n, "Tower level")->check(CLI::Range(1, 6));
  tower->add_option("--seed", seed, "RNG seed");
  tower->add_option("--count", count, "Random pairs for mult/verify");

  auto* pk = app.add_subcommand("pk", "Generation probability p_k");
  pk->add_option("--group", group_file, "Group JSON file")->required();
  pk->add_option("--k", k, "Tuple length")->check(CLI::Range(1u, 64u));
  pk->add_option("--mode", mode, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
  pk->add_option("--samples", samples, "Monte Carlo samples");
  pk->add_option("--seed", seed, "RNG seed");

  auto* zeta = app.add_subcommand("zeta", "Maximal subgroup zeta value at integer s");
  zeta->add_option("--group", group_file, "Group JSON file")->required();
  zeta->add_option("--s", s, "Exponent")->check(CLI::Range(1u, 64u));

  auto* maximal = app.add_subcommand("maximal", "Classify a subgroup of X x| prod B_i^Omega_i");
  maximal->add_option("--fixture", fixture_file, "Fixture JSON file")->required();

  auto* certify = app.add_subcommand("certify", "Certificate for a uniform k");
  certify->add_option("--spec,--group", group_file, "Group JSON file")->required();
  certify->add_option("--override", overrides_raw, "Constant override, e.g. C7=1000000");
  certify->add_option("--horizon", horizon, "Levels tabulated")->check(CLI::Range(2, 20));
  certify->add_option("--budget", budget, "Samples per candidate k_2");
  certify->add_option("--seed", seed, "RNG seed");

  app.add_subcommand("selftest", "Quick end-to-end checks");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (decide->parsed()) return cmd_decide(group_file, pairs, seed, false, opt);
    if (decide_u->parsed()) return cmd_decide(group_file, pairs, seed, true, opt);
    if (tower->parsed()) return cmd_tower(action, group_file, n, seed, count, opt);
    if (pk->parsed()) return cmd_pk(group_file, k, mode, samples, seed, opt);
    if (zeta->parsed()) return cmd_zeta(group_file, s, opt);
    if (maximal->parsed()) return cmd_maximal(fixture_file, opt);
    if (certify->parsed())
      return cmd_certify(group_file, overrides_raw, horizon, budget, seed, opt);
    return cmd_selftest(opt);
  } catch (const wp::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const wp::cap_error& e) {
    std::cerr << "cap error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
