#pragma once

// File formats.
//
// Groups are plain text:
//
//   # comment
//   order 4
//   names e a a2 a3            (optional)
//   presentation <a | a^4>     (optional, rest of line kept verbatim)
//   table
//   0 1 2 3
//   ...
//
// Amalgams, graphs, certificates, compatible pairs and configs are JSON. A
// group reference inside JSON is either a path (relative to the referring
// file) or an inline object {"order", "table", "names"?, "presentation"?}.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cpsep/amalgam.hpp"
#include "cpsep/graphgroups.hpp"
#include "cpsep/quotients.hpp"
#include "cpsep/separability.hpp"

namespace cpsep::io {

using nlohmann::json;

// Errors thrown here are Error(Parse) unless the content is well-formed but
// invalid, in which case the library's own error kinds propagate.

FiniteGroup parse_group(std::string_view text);
std::string format_group(const FiniteGroup& group);
FiniteGroup load_group(const std::filesystem::path& path);

// `H:3 K:1`; tokens are element indices or names. Identity syllables are dropped.
Word parse_word(const AmalgamSpec& spec, std::string_view literal);
std::string format_word(const Word& w);

json group_to_json(const FiniteGroup& group);
FiniteGroup group_from_json(const json& j, const std::filesystem::path& base_dir = {});

json amalgam_to_json(const AmalgamSpec& spec);
AmalgamSpec amalgam_from_json(const json& j, const std::filesystem::path& base_dir = {});
AmalgamSpec load_amalgam(const std::filesystem::path& path);

// Edges with an "inverse" field are read as directed edges; otherwise each
// entry is a geometric edge expanded into both orientations.
json graph_to_json(const GroupGraph& gg);
GroupGraph graph_from_json(const json& j, const std::filesystem::path& base_dir = {});
GroupGraph load_graph(const std::filesystem::path& path);

json pair_to_json(const CompatiblePair& pair);

struct Certificate {
  AmalgamSpec spec;
  std::size_t p;
  Word f;
  Word g;
  Witness witness;
};

bool operator==(const Certificate& a, const Certificate& b);

json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const json& j, const std::filesystem::path& base_dir = {});

enum class OutputFormat { text, json };

struct WorkspaceConfig {
  SearchBudget budget;
  OutputFormat output = OutputFormat::text;
  std::vector<std::string> group_paths;
  std::optional<std::string> amalgam_path;
  std::optional<std::string> graph_path;
};

bool operator==(const WorkspaceConfig& a, const WorkspaceConfig& b);

json config_to_json(const WorkspaceConfig& config);
// Reads extra targets from group_paths. Throws Parse, NotPrime, NotPPower.
WorkspaceConfig config_from_json(const json& j, const std::filesystem::path& base_dir = {});
WorkspaceConfig load_config(const std::filesystem::path& path);

// CPSEP_P, CPSEP_MAX_TARGET_ORDER, CPSEP_MAX_QUOTIENT_INDEX,
// CPSEP_MAX_CONJUGATOR_LENGTH, CPSEP_OUTPUT.
void apply_env_overrides(WorkspaceConfig& config);

json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cpsep::io
