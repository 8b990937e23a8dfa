#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subshift/autgroup.hpp"
#include "subshift/group.hpp"

namespace subshift {

// g -> (g g_0)(g g_1)...(g g_{q-1}) over the group's enumeration, letters
// numbered as in the Cayley table.  The trivial group gives 0 -> 01, 1 -> 0.
Substitution group_substitution(const FiniteGroup& g);

struct RealizationReport {
  std::size_t order = 0;
  std::vector<std::size_t> enumeration;
  Substitution substitution{Alphabet::of_size(1), {{0, 0}}};
  QuotientGroup quotient;
  QuotientSummary summary;
  std::vector<std::size_t> witness;  // group element -> quotient element (left translation)
  bool witness_ok = false;
  Word identity_pair;                // g_0 g_1
  Word last_pair;                    // g_{q-1} g_1
  bool aperiodicity_evidence = false;
  std::size_t components = 0;
  bool components_exact = false;
  bool ok = false;
  std::string note;
};

RealizationReport verify_realization(const FiniteGroup& g, std::size_t order_cap = kMaxGroupOrder);

std::vector<RealizationReport> verify_realizations(const std::vector<FiniteGroup>& groups,
                                                   Execution ex = Execution::parallel,
                                                   std::size_t order_cap = kMaxGroupOrder);

}  // namespace subshift
