#pragma once

// Searching for homomorphisms of G = (H * K; A = B, phi) onto finite p-groups
// that keep two non-conjugate elements non-conjugate.
//
// A witness is a pair psi_H, psi_K into a common p-group that agree on the
// amalgamated subgroup (psi_H(a) == psi_K(phi(a))), so they extend to G. The
// search is bounded by a SearchBudget; running out of budget is inconclusive.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpsep/amalgam.hpp"
#include "cpsep/execution.hpp"

namespace cpsep {

struct Witness {
  FiniteGroup target;
  GroupHom psi_H;
  GroupHom psi_K;
  std::string strategy;
};

struct SearchBudget {
  std::size_t p = 2;
  std::size_t max_target_order = 16;    // a power of p
  std::size_t max_quotient_index = 16;  // cap on [H:R], [K:S] for compatible pairs
  std::size_t max_conjugator_length = 4;
  std::vector<FiniteGroup> extra_targets;
};

// Throws NotPrime, NotPPower, or Parse (for zero caps).
void validate_budget(const SearchBudget& budget);

class ElementsConjugate : public Error {
 public:
  explicit ElementsConjugate(Word conjugator)
      : Error(ErrorKind::ElementsConjugate, "inputs are conjugate in G"), conjugator_(std::move(conjugator)) {}
  const Word& conjugator() const noexcept { return conjugator_; }

 private:
  Word conjugator_;
};

Elem word_image(const Witness& w, const Word& u);
Elem word_image(const FiniteGroup& target, const GroupHom& psi_H, const GroupHom& psi_K, const Word& u);

struct WitnessCheck {
  bool homomorphic = false;
  bool agrees_on_amalgam = false;
  bool target_is_p_group = false;
  bool onto = false;
  bool separates = false;
  Elem f_image = 0;
  Elem g_image = 0;
  Elem f_class_rep = 0;
  Elem g_class_rep = 0;

  bool ok() const { return homomorphic && agrees_on_amalgam && target_is_p_group && onto && separates; }
};

// Recomputes every witness property from scratch.
WitnessCheck check_witness(const AmalgamSpec& spec, const Witness& w, const Word& f, const Word& g, std::size_t p);

// Abelian p-groups of order <= max_order (one per partition, largest part first),
// then for p = 2 the dihedral and quaternion groups of orders 8 and 16, then
// extras; sorted by order, duplicates removed. Throws NotPrime, NotPPower.
std::vector<FiniteGroup> p_group_catalog(std::size_t p, std::size_t max_order,
                                         const std::vector<FiniteGroup>& extras = {});

// Agreeing pairs (psi_H, psi_K) into catalog groups, onto, separating f from g,
// in canonical order: catalog position, then psi_H, then psi_K, each in
// enumerate_homs order. Returns the first; the parallel path returns the same.
std::optional<Witness> direct_witness(const AmalgamSpec& spec, const Word& f, const Word& g,
                                      std::span<const FiniteGroup> catalog, Execution exec = Execution::parallel);

// Every such pair, in canonical order.
std::vector<Witness> enumerate_direct_witnesses(const AmalgamSpec& spec, const Word& f, const Word& g,
                                                std::span<const FiniteGroup> catalog);

// Strategy ladder: guided quotient, direct, kill-amalgam. The returned witness is
// re-verified. Throws ElementsConjugate or Error(BudgetExhausted).
Witness search_witness(const AmalgamSpec& spec, const Word& f, const Word& g, const SearchBudget& budget,
                       Execution exec = Execution::parallel);

struct SeparationEntry {
  Word element;
  bool separated = false;
  std::optional<Witness> witness;
  std::string note;
};

struct SeparationReport {
  std::vector<SeparationEntry> entries;
  bool all_separated() const;
  std::size_t failures() const;
};

// Every cyclically reduced element of length <= length_bound not conjugate to g
// is checked with search_witness. One-sided: failures are budget failures.
SeparationReport is_cfp_separable_bounded(const AmalgamSpec& spec, const Word& g, const SearchBudget& budget,
                                          std::size_t length_bound, Execution exec = Execution::parallel);

// Every nontrivial element of length <= length_bound needs a witness with
// nontrivial image.
SeparationReport check_residually_p_bounded(const AmalgamSpec& spec, std::size_t p, std::size_t length_bound,
                                            const SearchBudget& budget, Execution exec = Execution::parallel);

// One representative word (the rendered normal form) per element of length
// <= max_length, ordered by length and then normal form.
std::vector<Word> elements_up_to_length(const AmalgamSpec& spec, std::size_t max_length);

}  // namespace cpsep
