#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "ufg/ufg.hpp"

namespace ufgdepth {

using nlohmann::ordered_json;

// Skeleton shared by all reports: tool version, subcommand, the effective
// configuration and the conventions that affect the numbers.
ordered_json report_header(const std::string& command, const RunConfig& config);

// Writes `contents` to out_dir/name, creating out_dir.
void emit(const RunConfig& config, const std::string& name, const std::string& contents);
void emit_json(const RunConfig& config, const std::string& name, const ordered_json& doc);

ordered_json poset_json(const ufg::ItemUniverse& universe, const ufg::Poset& p);
// Covering edges plus a layer per item (longest chain of items placed before it).
ordered_json hasse_json(const ufg::ItemUniverse& universe, const ufg::Poset& p);
ordered_json family_summary(const ufg::UfgFamily& family);

}  // namespace ufgdepth
