#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ufg/family.hpp"
#include "ufg/poset.hpp"
#include "ufg/sample.hpp"

namespace ufg {

// JSON lines. The first line is a header with the sample hash, labels,
// cap, vc_obs and the support (covering edges plus mass as "num/den"); each
// following line is one set: {"members":[...],"edges":[[["a","b"],...],...],
// "weight":"num/den"}.
std::string format_family_jsonl(const UfgFamily& family,
                                const ItemUniverse& universe);

struct LoadedFamily {
  ItemUniverse universe;
  UfgFamily family;
};

// Rebuilds intersections and unions from the support and checks every weight
// and the total against the stored masses; inconsistencies are kParseError.
LoadedFamily parse_family_jsonl(std::string_view text);

// Cache file for a sample: <dir>/family-<hash>.jsonl, with a "-cap<N>" suffix
// when the cap was overridden.
std::filesystem::path family_cache_path(const std::filesystem::path& dir,
                                        const PosetSample& sample,
                                        std::optional<int> cap_override);

// Returns the cached family only if the file exists and its header hash
// matches the sample exactly.
std::optional<UfgFamily> load_cached_family(const std::filesystem::path& dir,
                                            const PosetSample& sample,
                                            std::optional<int> cap_override);
void store_cached_family(const std::filesystem::path& dir,
                         const PosetSample& sample,
                         std::optional<int> cap_override,
                         const UfgFamily& family);

}  // namespace ufg
