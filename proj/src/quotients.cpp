#include "cpsep/quotients.hpp"

#include <algorithm>
#include <optional>

namespace cpsep {

namespace {

std::vector<Elem> a_cap_r_phi(const AmalgamSpec& spec, const Subgroup& R) {
  std::vector<Elem> out;
  for (Elem a : spec.A().elements())
    if (R.contains(a)) out.push_back(spec.phi(a));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_compatible(const AmalgamSpec& spec, const Subgroup& R, const Subgroup& S) {
  if (R.parent_order() != spec.H().order() || !is_normal(spec.H(), R))
    throw Error(ErrorKind::NotNormal, "R is not normal in H");
  if (S.parent_order() != spec.K().order() || !is_normal(spec.K(), S))
    throw Error(ErrorKind::NotNormal, "S is not normal in K");
  return a_cap_r_phi(spec, R) == intersect(spec.B(), S).elements();
}

AmalgamSpec quotient_amalgam(const AmalgamSpec& spec, const Subgroup& R, const Subgroup& S) {
  return make_compatible_pair(spec, R, S).quotient_spec;
}

CompatiblePair make_compatible_pair(const AmalgamSpec& spec, const Subgroup& R, const Subgroup& S) {
  if (!is_compatible(spec, R, S)) throw Error(ErrorKind::NotCompatible, "(A ∩ R)phi != B ∩ S");
  auto qh = quotient(spec.H(), R);
  auto qk = quotient(spec.K(), S);
  const Subgroup a_img = image(qh.projection, qh.group, spec.A());
  const Subgroup b_img = image(qk.projection, qk.group, spec.B());
  std::map<Elem, Elem> phi;
  for (Elem a : spec.A().elements()) phi[qh.projection(a)] = qk.projection(spec.phi(a));
  auto qspec = AmalgamSpec::make(qh.group, qk.group, a_img.elements(), b_img.elements(), phi);
  return CompatiblePair{R, S, std::move(qspec), std::move(qh.projection), std::move(qk.projection)};
}

std::vector<Subgroup> p_index_normal_subgroups(const FiniteGroup& group, std::size_t p, std::size_t max_index) {
  require_prime(p);
  std::vector<Subgroup> out;
  for (auto& n : enumerate_normal_subgroups(group)) {
    const std::size_t idx = index(group, n);
    if (idx <= max_index && is_power_of(idx, p)) out.push_back(std::move(n));
  }
  return out;
}

std::vector<CompatiblePair> enumerate_compatible_pairs(const AmalgamSpec& spec, std::size_t p, std::size_t max_index,
                                                       Execution exec) {
  const auto rs = p_index_normal_subgroups(spec.H(), p, max_index);
  const auto ss = p_index_normal_subgroups(spec.K(), p, max_index);
  const long long cells = static_cast<long long>(rs.size() * ss.size());
  std::vector<std::optional<CompatiblePair>> grid(static_cast<std::size_t>(cells));

#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (long long c = 0; c < cells; ++c) {
    const auto& R = rs[static_cast<std::size_t>(c) / ss.size()];
    const auto& S = ss[static_cast<std::size_t>(c) % ss.size()];
    if (is_compatible(spec, R, S)) grid[static_cast<std::size_t>(c)] = make_compatible_pair(spec, R, S);
  }

  std::vector<CompatiblePair> out;
  for (auto& cell : grid)
    if (cell) out.push_back(std::move(*cell));
  return out;
}

CompatiblePair refine_to_compatible(const AmalgamSpec& spec, const Subgroup& M, const Subgroup& N, std::size_t p) {
  require_prime(p);
  if (M.parent_order() != spec.H().order() || !is_normal(spec.H(), M))
    throw Error(ErrorKind::NotNormal, "M is not normal in H");
  if (N.parent_order() != spec.K().order() || !is_normal(spec.K(), N))
    throw Error(ErrorKind::NotNormal, "N is not normal in K");
  if (!is_p_power_index(spec.H(), M, p) || !is_p_power_index(spec.K(), N, p))
    throw Error(ErrorKind::NotPPower, "M and N must have p-power index");

  std::vector<Elem> u, v;
  for (Elem a : spec.A().elements()) {
    if (M.contains(a) && N.contains(spec.phi(a))) {
      u.push_back(a);
      v.push_back(spec.phi(a));
    }
  }
  std::sort(v.begin(), v.end());

  // Largest normal subgroup below `bound` with prescribed intersection; ties go
  // to the lexicographically first.
  auto largest = [p](const FiniteGroup& g, const Subgroup& bound, const Subgroup& amalg,
                     const std::vector<Elem>& cap) -> std::optional<Subgroup> {
    std::optional<Subgroup> best;
    for (auto& cand : enumerate_normal_subgroups(g)) {
      if (!cand.is_subset_of(bound) || !is_power_of(index(g, cand), p)) continue;
      if (intersect(cand, amalg).elements() != cap) continue;
      if (!best || cand.size() > best->size()) best = std::move(cand);
    }
    return best;
  };

  auto R = largest(spec.H(), M, spec.A(), u);
  if (!R) throw Error(ErrorKind::NoRefinementFound, "no normal R <= M of p-power index with R ∩ A = U");
  auto S = largest(spec.K(), N, spec.B(), v);
  if (!S) throw Error(ErrorKind::NoRefinementFound, "no normal S <= N of p-power index with S ∩ B = V");
  return make_compatible_pair(spec, *R, *S);
}

ReducedWord project_word(const CompatiblePair& pair, const Word& w) {
  Word projected;
  projected.reserve(w.size());
  for (const auto& s : w) {
    if (s.elem >= (s.factor == Factor::H ? pair.proj_H.source_order() : pair.proj_K.source_order()))
      throw Error(ErrorKind::IndexOutOfRange, "syllable outside its factor");
    const Elem img = s.factor == Factor::H ? pair.proj_H(s.elem) : pair.proj_K(s.elem);
    if (img != 0) projected.push_back({s.factor, img});
  }
  return reduce(pair.quotient_spec, projected);
}

}  // namespace cpsep
