#include "wp/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "wp/errors.hpp"

namespace wp {

namespace fs = std::filesystem;

Json group_to_json(const PermGroup& g) {
  Json j;
  j["degree"] = g.degree();
  Json gens = Json::array();
  for (const auto& p : g.generators()) gens.push_back(p.to_cycles());
  j["generators"] = std::move(gens);
  return j;
}

PermGroup group_from_json(const Json& j) {
  require_input(j.is_object() && j.contains("degree") && j.contains("generators"),
                "group JSON needs \"degree\" and \"generators\"");
  require_input(j["degree"].is_number_integer(), "\"degree\" must be an integer");
  int degree = j["degree"].get<int>();
  require_input(degree >= 1 && degree <= 100000, "degree out of range");
  require_input(j["generators"].is_array(), "\"generators\" must be an array");
  std::vector<Permutation> gens;
  for (const auto& g : j["generators"]) {
    if (g.is_string()) {
      gens.push_back(Permutation::from_cycles(g.get<std::string>(), degree));
    } else if (g.is_array()) {
      std::vector<int> img;
      for (const auto& v : g) {
        require_input(v.is_number_integer(), "image entries must be integers");
        img.push_back(v.get<int>());
      }
      require_input((int)img.size() == degree, "image array length must equal the degree");
      gens.emplace_back(std::move(img));
    } else {
      throw input_error("each generator must be a cycle string or an image array");
    }
  }
  return PermGroup(degree, std::move(gens));
}

PermGroup load_group_file(const std::string& path) {
  std::ifstream in(path);
  require_input(in.good(), "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error(path + ": " + e.what());
  }
  return group_from_json(j);
}

std::string rat_json(const Rat& r) { return rat_to_string(r); }

std::uint64_t content_hash(const Json& j) {
  std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

Json chain_to_json(const StabilizerChain& chain) {
  Json j;
  j["schema"] = "chain/1";
  j["degree"] = chain.degree();
  j["order"] = chain.order().str();
  Json levels = Json::array();
  for (const auto& lv : chain.levels()) {
    Json l;
    l["base_point"] = lv.base_point;
    l["orbit"] = lv.orbit;
    Json trans = Json::array();
    for (int p : lv.orbit) trans.push_back(lv.trans[(std::size_t)p]->images());
    l["transversal"] = std::move(trans);
    Json gens = Json::array();
    for (const auto& g : lv.gens) gens.push_back(g.images());
    l["gens"] = std::move(gens);
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  return j;
}

std::optional<StabilizerChain> chain_from_json(const Json& j,
                                               const std::vector<Permutation>& gens) {
  try {
    if (!j.is_object() || j.value("schema", "") != "chain/1") return std::nullopt;
    int degree = j.at("degree").get<int>();
    std::vector<ChainLevel> levels;
    for (const auto& l : j.at("levels")) {
      ChainLevel lv;
      lv.base_point = l.at("base_point").get<int>();
      lv.orbit = l.at("orbit").get<std::vector<int>>();
      lv.trans.assign((std::size_t)degree, std::nullopt);
      const auto& trans = l.at("transversal");
      if (trans.size() != lv.orbit.size()) return std::nullopt;
      for (std::size_t i = 0; i < lv.orbit.size(); ++i)
        lv.trans[(std::size_t)lv.orbit[i]] = Permutation(trans[i].get<std::vector<int>>());
      for (const auto& g : l.at("gens")) lv.gens.emplace_back(g.get<std::vector<int>>());
      levels.push_back(std::move(lv));
    }
    StabilizerChain chain = StabilizerChain::from_parts(degree, std::move(levels));
    if (chain.order().str() != j.at("order").get<std::string>()) return std::nullopt;
    for (const auto& g : gens) {
      if (g.degree() != degree) return std::nullopt;
      if (!chain.contains(g)) return std::nullopt;
    }
    return chain;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Cache::Cache(std::string dir) : dir_(std::move(dir)) {}

Cache Cache::from_env() {
  if (const char* env = std::getenv("WREATH_CACHE_DIR")) return Cache(env);
  if (const char* home = std::getenv("HOME"))
    return Cache((fs::path(home) / ".cache" / "wreath").string());
  return Cache("");
}

std::optional<Json> Cache::load(const std::string& kind, std::uint64_t key) const {
  if (!enabled()) return std::nullopt;
  fs::path p = fs::path(dir_) / (kind + "-" + hash_hex(key) + ".json");
  std::error_code ec;
  if (!fs::exists(p, ec)) return std::nullopt;
  std::ifstream in(p);
  if (!in.good()) return std::nullopt;
  try {
    Json j;
    in >> j;
    return j;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void Cache::store(const std::string& kind, std::uint64_t key, const Json& payload) const {
  if (!enabled()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return;  // caching is best-effort
  fs::path p = fs::path(dir_) / (kind + "-" + hash_hex(key) + ".json");
  fs::path tmp = p;
  tmp += ".tmp";
  std::ofstream out(tmp);
  if (!out.good()) return;
  out << payload.dump(2) << '\n';
  out.close();
  fs::rename(tmp, p, ec);
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["schema"] = "verdict/1";
  j["finitely_generated"] = v.yes;
  j["orbit_sizes"] = v.orbit_sizes;
  j["reasons"] = v.reasons;
  if (v.abelian_witness) {
    Json w;
    w["kind"] = "abelianization";
    w["level"] = v.abelian_witness->level;
    w["quotient_order"] = (std::uint64_t)v.abelian_witness->pi.table->size();
    w["pairs_checked"] = v.abelian_witness->pairs_checked;
    w["multiplicative"] = v.abelian_witness->multiplicative;
    w["surjective"] = v.abelian_witness->surjective;
    j["abelianization_witness"] = std::move(w);
  }
  if (v.fixed_point) {
    Json w;
    w["kind"] = "fixed_point";
    w["point"] = v.fixed_point->fixed_point;
    w["level"] = v.fixed_point->level;
    w["pairs_checked"] = v.fixed_point->pairs_checked;
    w["multiplicative"] = v.fixed_point->multiplicative;
    j["fixed_point_witness"] = std::move(w);
  }
  return j;
}

Json constants_to_json(const ConstantsReport& c) {
  Json j;
  j["schema"] = "constants/1";
  j["C1"] = c.C1.str();
  j["C2"] = c.C2.str();
  j["C3"] = c.C3.str();
  j["C6"] = c.C6.str();
  j["C7"] = c.C7.str();
  j["C8"] = c.C8.str();
  j["C9"] = c.C9.str();
  j["K"] = c.K.str();
  j["provenance"] = c.provenance;
  Json case2 = Json::array();
  for (const auto& e : c.case2) {
    Json je;
    je["b_order"] = e.b_order.str();
    je["n_order"] = e.n_order.str();
    je["out_t"] = e.out_t.str();
    je["r"] = e.r;
    case2.push_back(std::move(je));
  }
  j["case2_pairs"] = std::move(case2);
  j["dsize"] = c.dsize;
  j["orbit_sizes"] = c.orbit_sizes;
  return j;
}

Json case_bounds_to_json(const CaseBounds& b) {
  Json j;
  j["schema"] = "case-bounds/1";
  j["n"] = b.n;
  j["k"] = b.k;
  j["case1"] = rat_json(b.case1);
  j["case2"] = rat_json(b.case2);
  j["case3"] = rat_json(b.case3);
  j["case4"] = rat_json(b.case4);
  j["total"] = rat_json(b.total);
  j["case2_convergent"] = b.case2_convergent;
  j["case4_convergent"] = b.case4_convergent;
  j["total_lt_1"] = b.total_lt_1;
  return j;
}

Json dyadic_to_json(const DyadicBounds& d) {
  Json j;
  j["n"] = d.n;
  j["e1"] = d.e1.str();
  j["e2"] = d.e2.str();
  j["e3"] = d.e3.str();
  j["e4"] = d.e4.str();
  j["e_total"] = d.e_total.str();
  j["below_one"] = d.below_one;
  return j;
}

Json certificate_to_json(const Certificate& cert) {
  Json j;
  j["schema"] = "certificate/1";
  j["constants"] = constants_to_json(cert.consts);
  j["k1"] = cert.k1.str();
  j["k2"] = cert.k2.str();
  j["k"] = cert.k.str();
  j["n1"] = cert.n1;
  j["horizon"] = cert.horizon;
  Json table = Json::array();
  for (const auto& d : cert.table) table.push_back(dyadic_to_json(d));
  j["level_bounds"] = std::move(table);
  j["summable"] = cert.summable;
  j["bound_sum"] = rat_json(cert.bound_sum);
  j["pk_base"] = rat_json(cert.pk_base);
  j["lower_bound"] = rat_json(cert.lower_bound);
  j["positive"] = cert.positive;
  j["mc_samples"] = cert.mc_samples;
  j["mc_seed"] = cert.mc_seed;
  j["k2_witness"] = cert.k2_witness;
  return j;
}

Json pk_to_json(const PkResult& r) {
  Json j;
  j["schema"] = "pk/1";
  j["mode"] = r.mode;
  j["value"] = rat_json(r.value);
  j["wilson_low"] = rat_json(r.low);
  j["wilson_high"] = rat_json(r.high);
  j["samples"] = r.samples;
  j["successes"] = r.successes;
  return j;
}

Json zeta_to_json(const ZetaValue& z) {
  Json j;
  j["schema"] = "zeta/1";
  Json terms = Json::array();
  for (const auto& t : z.terms) {
    Json jt;
    jt["index"] = t.index.str();
    jt["class_size"] = t.class_size;
    jt["term"] = rat_json(t.term);
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  j["total"] = rat_json(z.total);
  return j;
}

Json subgroup_report_to_json(const SubgroupReport& r) {
  Json j;
  j["schema"] = "subgroup-report/1";
  j["order"] = (std::uint64_t)r.M.elems.size();
  j["index"] = r.index.str();
  j["proper"] = r.proper;
  j["clean"] = r.clean;
  j["surjects_onto_x"] = r.surjects_onto_x;
  j["maximal_checked"] = r.maximal_checked;
  j["maximal"] = r.maximal;
  j["case"] = r.case_tag;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json section_bound_to_json(const SectionBound& sb) {
  Json j;
  j["schema"] = "section-bound/1";
  Json rec = Json::array();
  for (const auto& a : sb.recursion) rec.push_back(a.str());
  j["recursion"] = std::move(rec);
  j["closed_form"] = sb.closed_form.str();
  j["orbit_size"] = sb.orbit_size.str();
  j["closed_dominates"] = sb.closed_dominates;
  j["alpha_exact"] = sb.alpha_exact.str();
  j["alpha_bound"] = sb.alpha_bound.str();
  j["beta_exact"] = sb.beta_exact.str();
  j["beta_bound"] = sb.beta_bound.str();
  j["alpha_ok"] = sb.alpha_ok;
  j["beta_ok"] = sb.beta_ok;
  return j;
}

}  // namespace wp
