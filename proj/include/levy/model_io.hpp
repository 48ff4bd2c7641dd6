#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "levy/model.hpp"

namespace levy {

// JSON form of a model. Keys are sorted, so dump() of the result is canonical.
nlohmann::json model_to_json(const ModelSpec& model);

// Throws ModelError naming the offending field; text (when given) is used to locate its line.
ModelSpec model_from_json(const nlohmann::json& j, const std::string& text = "");

ModelSpec parse_model(const std::string& text);
// Canonical file contents: two-space indented JSON with sorted keys and a trailing newline.
std::string save_model(const ModelSpec& model);

// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string model_hash(const ModelSpec& model);

// "builtin:name(p1,p2)" or a path to a JSON model file.
ModelSpec load_model(const std::string& source);

// name or name(p1,...,pk), without the "builtin:" prefix.
ModelSpec builtin_model(const std::string& spec);

struct BuiltinInfo {
  std::string name;
  std::string params;
  std::string summary;
};
const std::vector<BuiltinInfo>& builtin_catalog();

}  // namespace levy
