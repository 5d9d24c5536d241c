#include "cpsep/separability.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cpsep/graphgroups.hpp"
#include "cpsep/quotients.hpp"
#include "witness_search.hpp"

namespace cpsep {

namespace {

const char* const kExhausted =
    "no witness within the search budget; inconclusive. For an amalgam of finite p-groups this is also "
    "what one sees when G is not residually p";

// Partitions of n into parts <= max_part, largest part first, in reverse lex order.
void partitions(std::size_t n, std::size_t max_part, std::vector<std::size_t>& prefix,
                std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t part = std::min(n, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions(n - part, part, prefix, out);
    prefix.pop_back();
  }
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool same_table(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  for (Elem x = 0; x < a.order(); ++x)
    for (Elem y = 0; y < a.order(); ++y)
      if (a.mul(x, y) != b.mul(x, y)) return false;
  return true;
}

Witness to_witness(std::span<const FiniteGroup> catalog, detail::AgreeingHit hit, std::string strategy) {
  return Witness{catalog[hit.target], std::move(hit.psi_H), std::move(hit.psi_K), std::move(strategy)};
}

// Which of the four cases of the separation argument applies to cyclically
// reduced f and g of the same or different lengths.
int case_of(const ReducedWord& f, const ReducedWord& g) {
  if (f.length() != g.length()) return 1;
  if (f.length() == 1) return f[0].factor == g[0].factor ? 3 : 2;
  return 4;
}

bool avoids(const AmalgamSpec& spec, const ReducedWord& w, const Subgroup& am, const Subgroup& bn) {
  for (const auto& s : w.syllables()) {
    if (spec.in_amalgam(s)) continue;
    if ((s.factor == Factor::H ? am : bn).contains(s.elem)) return false;
  }
  return true;
}

bool has_amalgam_syllable(const AmalgamSpec& spec, const ReducedWord& w) {
  return std::any_of(w.syllables().begin(), w.syllables().end(), [&](Syllable s) { return spec.in_amalgam(s); });
}

std::optional<Witness> guided(const AmalgamSpec& spec, const ReducedWord& f, const ReducedWord& g,
                              const SearchBudget& budget, std::span<const FiniteGroup> catalog, Execution exec) {
  const int which = case_of(f, g);
  auto ms = p_index_normal_subgroups(spec.H(), budget.p, budget.max_quotient_index);
  auto ns = p_index_normal_subgroups(spec.K(), budget.p, budget.max_quotient_index);
  std::reverse(ms.begin(), ms.end());
  std::reverse(ns.begin(), ns.end());

  std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> tried;
  for (const auto& M : ms) {
    const Subgroup am = join(spec.H(), spec.A(), M);
    for (const auto& N : ns) {
      if (which == 3) {
        const bool in_h = f[0].factor == Factor::H;
        const auto q = quotient(spec.factor(f[0].factor), in_h ? M : N);
        const auto cls = conjugacy_class_index(q.group);
        if (cls[q.projection(f[0].elem)] == cls[q.projection(g[0].elem)]) continue;
      } else {
        const Subgroup bn = join(spec.K(), spec.B(), N);
        if (!avoids(spec, f, am, bn) || !avoids(spec, g, am, bn)) continue;
      }

      std::optional<CompatiblePair> pair;
      try {
        pair = refine_to_compatible(spec, M, N, budget.p);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoRefinementFound) throw;
        continue;
      }
      if (!tried.insert({pair->R.elements(), pair->S.elements()}).second) continue;

      const ReducedWord pf = project_word(*pair, f.syllables());
      const ReducedWord pg = project_word(*pair, g.syllables());
      if ((which == 1 || which == 4) && !has_amalgam_syllable(spec, f) && !has_amalgam_syllable(spec, g)) {
        if (pf.length() != f.length() || pg.length() != g.length())
          throw std::logic_error("guided quotient shortened a word whose syllables avoid AM and BN");
      }

      auto hit = exec == Execution::parallel
                     ? detail::first_agreeing_hit_parallel(pair->quotient_spec, pf.syllables(), pg.syllables(), catalog)
                     : detail::first_agreeing_hit_serial(pair->quotient_spec, pf.syllables(), pg.syllables(), catalog);
      if (!hit) continue;
      return Witness{catalog[hit->target], pair->proj_H.then(hit->psi_H), pair->proj_K.then(hit->psi_K),
                     "guided-case-" + std::to_string(which)};
    }
  }
  return std::nullopt;
}

std::optional<Witness> kill_amalgam(const AmalgamSpec& spec, const Word& f, const Word& g, const SearchBudget& budget) {
  const auto pres = fundamental_presentation(amalgam_as_group_graph(spec));
  const auto killed = kill_subgroups(pres, {spec.A(), spec.B()});
  std::optional<DirectProductCollapse> collapse;
  try {
    collapse.emplace(collapse_to_direct_product(killed.presentation));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::WrongShape) throw;
    return std::nullopt;
  }
  const FiniteGroup& target = collapse->group;
  if (target.order() > budget.max_target_order || !is_p_group(target, budget.p)) return std::nullopt;

  std::vector<Elem> h_images, k_images;
  for (Elem x = 0; x < spec.H().order(); ++x)
    h_images.push_back(collapse->vertex_images[0][killed.vertex_projections[0](x)]);
  for (Elem y = 0; y < spec.K().order(); ++y)
    k_images.push_back(collapse->vertex_images[1][killed.vertex_projections[1](y)]);
  Witness w{target, GroupHom::make(spec.H(), target, h_images), GroupHom::make(spec.K(), target, k_images),
            "kill-amalgam"};
  if (!check_witness(spec, w, f, g, budget.p).ok()) return std::nullopt;
  return w;
}

Witness verified(const AmalgamSpec& spec, Witness w, const Word& f, const Word& g, std::size_t p) {
  if (!check_witness(spec, w, f, g, p).ok())
    throw std::logic_error("witness from strategy " + w.strategy + " failed re-verification");
  return w;
}

}  // namespace

void validate_budget(const SearchBudget& budget) {
  require_prime(budget.p);
  if (budget.max_target_order == 0 || budget.max_quotient_index == 0 || budget.max_conjugator_length == 0)
    throw Error(ErrorKind::Parse, "budget caps must be positive");
  if (!is_power_of(budget.max_target_order, budget.p))
    throw Error(ErrorKind::NotPPower, "max_target_order must be a power of p");
}

Elem word_image(const FiniteGroup& target, const GroupHom& psi_H, const GroupHom& psi_K, const Word& u) {
  Elem acc = 0;
  for (const auto& s : u) acc = target.mul(acc, s.factor == Factor::H ? psi_H(s.elem) : psi_K(s.elem));
  return acc;
}

Elem word_image(const Witness& w, const Word& u) { return word_image(w.target, w.psi_H, w.psi_K, u); }

WitnessCheck check_witness(const AmalgamSpec& spec, const Witness& w, const Word& f, const Word& g, std::size_t p) {
  WitnessCheck c;
  const FiniteGroup& t = w.target;
  if (w.psi_H.source_order() != spec.H().order() || w.psi_K.source_order() != spec.K().order() ||
      w.psi_H.target_order() != t.order() || w.psi_K.target_order() != t.order())
    return c;
  try {
    GroupHom::make(spec.H(), t, w.psi_H.images());
    GroupHom::make(spec.K(), t, w.psi_K.images());
    c.homomorphic = true;
  } catch (const Error&) {
    return c;
  }

  c.agrees_on_amalgam = std::all_of(spec.A().elements().begin(), spec.A().elements().end(),
                                    [&](Elem a) { return w.psi_H(a) == w.psi_K(spec.phi(a)); });
  c.target_is_p_group = is_prime(p) && is_power_of(t.order(), p);

  std::vector<Elem> gens = w.psi_H.images();
  gens.insert(gens.end(), w.psi_K.images().begin(), w.psi_K.images().end());
  c.onto = subgroup_closure(t, gens).size() == t.order();

  c.f_image = word_image(w, f);
  c.g_image = word_image(w, g);
  const auto classes = conjugacy_classes(t);
  const auto idx = conjugacy_class_index(t);
  c.f_class_rep = classes[idx[c.f_image]].front();
  c.g_class_rep = classes[idx[c.g_image]].front();
  c.separates = c.f_class_rep != c.g_class_rep;
  return c;
}

std::vector<FiniteGroup> p_group_catalog(std::size_t p, std::size_t max_order, const std::vector<FiniteGroup>& extras) {
  require_prime(p);
  if (!is_power_of(max_order, p)) throw Error(ErrorKind::NotPPower, "max_order must be a power of p");

  std::vector<FiniteGroup> out;
  for (std::size_t k = 1; ipow(p, k) <= max_order; ++k) {
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::size_t> prefix;
    partitions(k, k, prefix, parts);
    for (const auto& lambda : parts) {
      FiniteGroup g = FiniteGroup::cyclic(ipow(p, lambda[0]));
      for (std::size_t i = 1; i < lambda.size(); ++i)
        g = FiniteGroup::direct_product(g, FiniteGroup::cyclic(ipow(p, lambda[i])));
      out.push_back(std::move(g));
    }
    if (p == 2 && (k == 3 || k == 4)) {
      const std::size_t n = ipow(2, k);
      out.push_back(FiniteGroup::dihedral(n / 2));
      out.push_back(FiniteGroup::dicyclic(n / 4));
    }
  }
  for (const auto& e : extras) {
    if (!is_power_of(e.order(), p) || e.order() == 1)
      throw Error(ErrorKind::NotPPower, "extra target of order " + std::to_string(e.order()) + " is not a p-group");
    if (e.order() <= max_order) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const FiniteGroup& a, const FiniteGroup& b) { return a.order() < b.order(); });

  std::vector<FiniteGroup> unique;
  for (auto& g : out)
    if (std::none_of(unique.begin(), unique.end(), [&](const FiniteGroup& u) { return same_table(u, g); }))
      unique.push_back(std::move(g));
  return unique;
}

std::optional<Witness> direct_witness(const AmalgamSpec& spec, const Word& f, const Word& g,
                                      std::span<const FiniteGroup> catalog, Execution exec) {
  auto hit = exec == Execution::parallel ? detail::first_agreeing_hit_parallel(spec, f, g, catalog)
                                         : detail::first_agreeing_hit_serial(spec, f, g, catalog);
  if (!hit) return std::nullopt;
  return to_witness(catalog, std::move(*hit), "direct");
}

std::vector<Witness> enumerate_direct_witnesses(const AmalgamSpec& spec, const Word& f, const Word& g,
                                                std::span<const FiniteGroup> catalog) {
  std::vector<Witness> out;
  for (auto& hit : detail::all_agreeing_hits(spec, f, g, catalog)) out.push_back(to_witness(catalog, std::move(hit), "direct"));
  return out;
}

Witness search_witness(const AmalgamSpec& spec, const Word& f, const Word& g, const SearchBudget& budget,
                       Execution exec) {
  validate_budget(budget);
  check_word(spec, f);
  check_word(spec, g);

  const auto verdict = spec.is_central() ? is_conjugate_central(spec, f, g) : is_conjugate_general(spec, f, g);
  if (verdict.conjugate) throw ElementsConjugate(verdict.conjugator);

  const auto catalog = p_group_catalog(budget.p, budget.max_target_order, budget.extra_targets);
  const auto cf = cyclically_reduce(spec, f);
  const auto cg = cyclically_reduce(spec, g);

  if (auto w = guided(spec, cf.word, cg.word, budget, catalog, exec)) return verified(spec, std::move(*w), f, g, budget.p);
  if (auto w = direct_witness(spec, f, g, catalog, exec)) return verified(spec, std::move(*w), f, g, budget.p);
  if (auto w = kill_amalgam(spec, f, g, budget)) return verified(spec, std::move(*w), f, g, budget.p);
  throw Error(ErrorKind::BudgetExhausted, kExhausted);
}

bool SeparationReport::all_separated() const {
  return std::all_of(entries.begin(), entries.end(), [](const SeparationEntry& e) { return e.separated; });
}

std::size_t SeparationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const SeparationEntry& e) { return !e.separated; }));
}

std::vector<Word> elements_up_to_length(const AmalgamSpec& spec, std::size_t max_length) {
  std::vector<Elem> reps[2];
  for (int side = 0; side < 2; ++side) {
    const Factor fac = side == 0 ? Factor::H : Factor::K;
    for (Elem x = 1; x < spec.factor(fac).order(); ++x)
      if (spec.coset_rep(fac, x) == x && !spec.amalgamated(fac).contains(x)) reps[side].push_back(x);
  }

  std::vector<NormalForm> forms;
  std::function<void(NormalForm&, Factor)> extend = [&](NormalForm& nf, Factor next) {
    forms.push_back(nf);
    if (nf.tail.size() >= max_length) return;
    for (Elem x : reps[next == Factor::H ? 0 : 1]) {
      nf.tail.push_back({next, x});
      extend(nf, other(next));
      nf.tail.pop_back();
    }
  };
  for (Elem a : spec.A().elements()) {
    NormalForm nf{a, {}};
    forms.push_back(nf);
    if (max_length == 0) continue;
    for (Factor start : {Factor::H, Factor::K}) {
      for (Elem x : reps[start == Factor::H ? 0 : 1]) {
        nf.tail = {{start, x}};
        extend(nf, other(start));
      }
    }
  }

  auto len = [](const NormalForm& nf) -> std::size_t { return nf.tail.empty() ? (nf.amalgam_part != 0) : nf.tail.size(); };
  std::erase_if(forms, [&](const NormalForm& nf) { return len(nf) > max_length; });
  std::sort(forms.begin(), forms.end(), [&](const NormalForm& a, const NormalForm& b) {
    if (len(a) != len(b)) return len(a) < len(b);
    if (a.tail != b.tail) return a.tail < b.tail;
    return a.amalgam_part < b.amalgam_part;
  });

  std::vector<Word> out;
  for (const auto& nf : forms) out.push_back(render(nf));
  return out;
}

SeparationReport is_cfp_separable_bounded(const AmalgamSpec& spec, const Word& g, const SearchBudget& budget,
                                          std::size_t length_bound, Execution exec) {
  check_word(spec, g);
  SeparationReport report;
  for (auto& a : elements_up_to_length(spec, length_bound)) {
    if (!is_cyclically_reduced(spec, a)) continue;
    SeparationEntry entry{a, false, std::nullopt, {}};
    try {
      entry.witness = search_witness(spec, a, g, budget, exec);
      entry.separated = true;
      entry.note = entry.witness->strategy;
    } catch (const ElementsConjugate&) {
      continue;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExhausted) throw;
      entry.note = "budget exhausted";
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

SeparationReport check_residually_p_bounded(const AmalgamSpec& spec, std::size_t p, std::size_t length_bound,
                                            const SearchBudget& budget, Execution exec) {
  SearchBudget b = budget;
  b.p = p;
  validate_budget(b);
  const auto catalog = p_group_catalog(p, b.max_target_order, b.extra_targets);

  SeparationReport report;
  for (auto& u : elements_up_to_length(spec, length_bound)) {
    if (reduce(spec, u).empty()) continue;
    SeparationEntry entry{u, false, direct_witness(spec, u, {}, catalog, exec), {}};
    if (entry.witness) {
      entry.separated = true;
      entry.note = "image " + std::to_string(word_image(*entry.witness, u)) + " in a group of order " +
                   std::to_string(entry.witness->target.order());
    } else {
      entry.note = "trivial image in every catalog group";
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace cpsep
