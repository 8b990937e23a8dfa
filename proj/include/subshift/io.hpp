#pragma once

#include <filesystem>

#include <json.hpp>

#include "subshift/core.hpp"
#include "subshift/group.hpp"
#include "subshift/language.hpp"

namespace subshift {

// {"alphabet":["0","1"],"rules":{"0":"01","1":"10"}}
Substitution substitution_from_json(const nlohmann::json& j);
nlohmann::json substitution_to_json(const Substitution& s);

// {"order":q,"table":[[...]],"identity":0}
FiniteGroup group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const FiniteGroup& g);

nlohmann::json read_json_file(const std::filesystem::path& path);
Substitution load_substitution(const std::filesystem::path& path);
FiniteGroup load_group(const std::filesystem::path& path);

// Text file: a line "valid_prefix=<len>" and a line of single-character
// symbols.  Lines starting with '#' are ignored.  The alphabet is the sorted
// set of symbols unless an "alphabet=<symbols>" line is present.
FactorLanguage load_sequence(const std::filesystem::path& path);

}  // namespace subshift
