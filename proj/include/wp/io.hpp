#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "wp/certify.hpp"
#include "wp/genprob.hpp"
#include "wp/permgroup.hpp"
#include "wp/semidirect.hpp"

namespace wp {

using Json = nlohmann::ordered_json;

// Groups travel as {"degree": d, "generators": [...]}, each generator either
// a cycle string or a full image array.
Json group_to_json(const PermGroup& g);
PermGroup group_from_json(const Json& j);
PermGroup load_group_file(const std::string& path);

std::string rat_json(const Rat& r);  // "num/den", den omitted when 1

// FNV-1a over a canonical dump; stable across runs, used as a cache key.
std::uint64_t content_hash(const Json& j);
std::string hash_hex(std::uint64_t h);

Json chain_to_json(const StabilizerChain& chain);
// Rebuilds the chain from parts and verifies the given generators all sift
// to the identity; returns nothing when the payload is stale or corrupt.
std::optional<StabilizerChain> chain_from_json(const Json& j,
                                               const std::vector<Permutation>& gens);

// On-disk cache, keyed by (kind, content hash).  A hit never changes results:
// payloads carry enough data to re-verify before use.  Directory comes from
// WREATH_CACHE_DIR, falling back to ~/.cache/wreath; empty disables caching.
class Cache {
 public:
  explicit Cache(std::string dir);
  static Cache from_env();

  bool enabled() const { return !dir_.empty(); }
  std::optional<Json> load(const std::string& kind, std::uint64_t key) const;
  void store(const std::string& kind, std::uint64_t key, const Json& payload) const;

 private:
  std::string dir_;
};

Json verdict_to_json(const Verdict& v);
Json constants_to_json(const ConstantsReport& c);
Json case_bounds_to_json(const CaseBounds& b);
Json dyadic_to_json(const DyadicBounds& d);
Json certificate_to_json(const Certificate& cert);
Json pk_to_json(const PkResult& r);
Json zeta_to_json(const ZetaValue& z);
Json subgroup_report_to_json(const SubgroupReport& r);
Json section_bound_to_json(const SectionBound& sb);

}  // namespace wp
