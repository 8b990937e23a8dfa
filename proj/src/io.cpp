#include "subshift/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "subshift/error.hpp"

namespace subshift {

Substitution substitution_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::string> labels = j.at("alphabet").get<std::vector<std::string>>();
    for (const auto& l : labels)
      if (l.size() != 1) throw PreconditionError("alphabet labels must be single characters");
    Alphabet alphabet(labels);
    const auto& rules = j.at("rules");
    if (!rules.is_object()) throw PreconditionError("rules must be an object");
    for (const auto& [key, value] : rules.items())
      if (!alphabet.find(key)) throw PreconditionError("rule for unknown letter '" + key + "'");
    std::vector<Word> images;
    for (const auto& l : labels) {
      if (!rules.contains(l)) throw PreconditionError("missing rule for letter '" + l + "'");
      images.push_back(alphabet.parse(rules.at(l).get<std::string>()));
    }
    return Substitution(std::move(alphabet), std::move(images));
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed substitution: ") + e.what());
  }
}

nlohmann::json substitution_to_json(const Substitution& s) {
  nlohmann::json rules = nlohmann::json::object();
  for (std::size_t a = 0; a < s.size(); ++a)
    rules[s.alphabet().label(static_cast<Letter>(a))] =
        s.alphabet().render(s.image(static_cast<Letter>(a)));
  return {{"alphabet", s.alphabet().labels()}, {"rules", rules}};
}

FiniteGroup group_from_json(const nlohmann::json& j) {
  try {
    auto order = j.at("order").get<std::size_t>();
    auto table = j.at("table").get<CayleyTable>();
    auto identity = j.at("identity").get<std::size_t>();
    if (table.size() != order) throw PreconditionError("table size does not match order");
    return FiniteGroup(std::move(table), identity);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed group: ") + e.what());
  }
}

nlohmann::json group_to_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"table", g.table()}, {"identity", g.identity()}};
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(path.string() + ": " + e.what());
  }
}

Substitution load_substitution(const std::filesystem::path& path) {
  return substitution_from_json(read_json_file(path));
}

FiniteGroup load_group(const std::filesystem::path& path) {
  return group_from_json(read_json_file(path));
}

FactorLanguage load_sequence(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path.string());
  std::optional<std::size_t> valid;
  std::optional<std::string> alphabet_line;
  std::string symbols;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("valid_prefix=", 0) == 0) {
      try {
        valid = std::stoull(line.substr(13));
      } catch (const std::exception&) {
        throw PreconditionError("bad valid_prefix header");
      }
    } else if (line.rfind("alphabet=", 0) == 0) {
      alphabet_line = line.substr(9);
    } else {
      symbols += line;
    }
  }
  if (!valid) throw PreconditionError("missing valid_prefix header");
  std::set<char> chars(symbols.begin(), symbols.end());
  if (alphabet_line) chars = std::set<char>(alphabet_line->begin(), alphabet_line->end());
  std::vector<std::string> labels;
  for (char c : chars) labels.emplace_back(1, c);
  if (labels.empty()) throw PreconditionError("empty sequence");
  Alphabet alphabet(labels);
  Word seq = alphabet.parse(symbols);
  return FactorLanguage::from_sequence(std::move(alphabet), std::move(seq), *valid);
}

}  // namespace subshift
