#include "subshift/realize.hpp"

#include <algorithm>
#include <exception>
#include <numeric>

#include "subshift/error.hpp"

namespace subshift {

Substitution group_substitution(const FiniteGroup& g) {
  if (g.order() == 1) return Substitution(Alphabet::of_size(2), {{0, 1}, {0}});
  const auto order = g.enumeration();
  std::vector<Word> images;
  for (std::size_t a = 0; a < g.order(); ++a) {
    Word img;
    for (std::size_t h : order) img.push_back(static_cast<Letter>(g.product(a, h)));
    images.push_back(std::move(img));
  }
  return Substitution(Alphabet::of_size(g.order()), std::move(images));
}

namespace {

QuotientGroup trivial_quotient(const FactorLanguage& lang) {
  // Fibonacci is not bijective: fall back to the bounded search.
  SearchOptions opts;
  opts.radius = 1;
  auto res = search_automorphisms(lang, opts);
  QuotientGroup q;
  q.status = AutStatus::candidate;
  for (const auto& d : res.classes)
    if (d.shift_power) {
      q.elements.push_back(SlidingRule::identity(lang.alphabet().size()).table());
      q.status = d.status;
    }
  for (const auto& d : res.classes)
    if (!d.shift_power) q.elements.push_back(d.rule.table());
  q.table.assign(q.elements.size(), std::vector<std::uint32_t>(q.elements.size(), 0));
  return q;
}

}  // namespace

RealizationReport verify_realization(const FiniteGroup& g, std::size_t order_cap) {
  if (g.order() > order_cap)
    throw CapExceeded("group order " + std::to_string(g.order()) + " exceeds the cap of " +
                      std::to_string(order_cap));
  RealizationReport r;
  r.order = g.order();
  r.enumeration = g.enumeration();
  r.substitution = group_substitution(g);
  auto lang = FactorLanguage::from_substitution(r.substitution);

  if (g.order() == 1) {
    r.quotient = trivial_quotient(lang);
    if (r.quotient.elements.size() != 1) {
      r.note = "bounded search found extra automorphisms";
      return r;
    }
    r.summary = {1, true, {1}, "1"};
    r.witness = {0};
    r.witness_ok = true;
    r.aperiodicity_evidence = !is_eventually_periodic(lang, kDefaultAperiodicCutoff).periodic;
    r.components = 1;
    r.components_exact = false;
    r.ok = r.aperiodicity_evidence;
    r.note = "trivial group realized by 0 -> 01, 1 -> 0";
    return r;
  }

  const auto& s = r.substitution;
  if (!s.flags().primitive || !s.flags().bijective)
    throw PreconditionError("group substitution is not primitive and bijective");
  const std::size_t q = g.order();
  r.identity_pair = {static_cast<Letter>(r.enumeration[0]), static_cast<Letter>(r.enumeration[1])};
  r.last_pair = {static_cast<Letter>(r.enumeration[q - 1]), static_cast<Letter>(r.enumeration[1])};
  r.aperiodicity_evidence = lang.contains(r.identity_pair) && lang.contains(r.last_pair);

  r.quotient = letter_automorphisms(lang);
  r.summary = r.quotient.summary();

  r.witness.assign(q, q);
  for (std::size_t a = 0; a < q; ++a) {
    std::vector<Letter> translation(q);
    for (std::size_t h = 0; h < q; ++h) translation[h] = static_cast<Letter>(g.product(a, h));
    auto it = std::find(r.quotient.elements.begin(), r.quotient.elements.end(), translation);
    if (it != r.quotient.elements.end())
      r.witness[a] = static_cast<std::size_t>(it - r.quotient.elements.begin());
  }
  std::vector<std::size_t> sorted = r.witness;
  std::sort(sorted.begin(), sorted.end());
  r.witness_ok = r.quotient.elements.size() == q &&
                 std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
                 sorted.back() < q && r.witness[g.identity()] == 0;
  if (r.witness_ok)
    for (std::size_t a = 0; a < q && r.witness_ok; ++a)
      for (std::size_t b = 0; b < q; ++b)
        if (r.witness[g.product(a, b)] != r.quotient.table[r.witness[a]][r.witness[b]]) {
          r.witness_ok = false;
          break;
        }

  auto comps = asymptotic_components(lang);
  r.components = comps.components.size();
  r.components_exact = comps.exact;
  r.ok = r.witness_ok && r.aperiodicity_evidence && r.components % q == 0;
  if (!r.ok)
    r.note = !r.witness_ok ? "translations do not form the quotient"
             : !r.aperiodicity_evidence ? "asymptotic pair words missing from the language"
                                        : "component count not divisible by the group order";
  return r;
}

std::vector<RealizationReport> verify_realizations(const std::vector<FiniteGroup>& groups,
                                                   Execution ex, std::size_t order_cap) {
  std::vector<std::optional<RealizationReport>> out(groups.size());
  std::vector<std::exception_ptr> errors(groups.size());
#pragma omp parallel for schedule(dynamic) if (ex == Execution::parallel)
  for (std::size_t i = 0; i < groups.size(); ++i) {
    try {
      out[i] = verify_realization(groups[i], order_cap);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  std::vector<RealizationReport> reports;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    reports.push_back(std::move(*out[i]));
  }
  return reports;
}

}  // namespace subshift
