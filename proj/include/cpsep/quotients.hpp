#pragma once

// Compatible normal subgroup pairs and the quotient amalgams they induce.
//
// Normal subgroups R of H and S of K are compatible when (A ∩ R)phi = B ∩ S.
// Such a pair yields the amalgam G_{R,S} of H/R and K/S over AR/R = BS/S and
// a surjection rho_{R,S} : G -> G_{R,S}.

#include <cstddef>
#include <vector>

#include "cpsep/amalgam.hpp"
#include "cpsep/execution.hpp"

namespace cpsep {

struct CompatiblePair {
  Subgroup R;
  Subgroup S;
  AmalgamSpec quotient_spec;
  GroupHom proj_H;
  GroupHom proj_K;
};

// Throws NotNormal unless R is normal in H and S is normal in K.
bool is_compatible(const AmalgamSpec& spec, const Subgroup& R, const Subgroup& S);

// Throws NotCompatible.
AmalgamSpec quotient_amalgam(const AmalgamSpec& spec, const Subgroup& R, const Subgroup& S);
CompatiblePair make_compatible_pair(const AmalgamSpec& spec, const Subgroup& R, const Subgroup& S);

// Normal subgroups of `group` whose index is a power of p no larger than max_index,
// in enumerate_normal_subgroups order.
std::vector<Subgroup> p_index_normal_subgroups(const FiniteGroup& group, std::size_t p, std::size_t max_index);

// Every compatible pair with p-power indices <= max_index. Ordered by the
// position of R, then of S, in p_index_normal_subgroups. Throws NotPrime.
std::vector<CompatiblePair> enumerate_compatible_pairs(const AmalgamSpec& spec, std::size_t p, std::size_t max_index,
                                                       Execution exec = Execution::parallel);

// Given normal M <= H, N <= K of p-power index, returns compatible (R, S) with
// R <= M, S <= N, R ∩ A = U, S ∩ B = V where U = (M ∩ A) ∩ (N ∩ B)phi^-1 and
// V = Uphi. The largest admissible R and then S are chosen.
// Throws NoRefinementFound, NotNormal, NotPrime, NotPPower.
CompatiblePair refine_to_compatible(const AmalgamSpec& spec, const Subgroup& M, const Subgroup& N, std::size_t p);

// rho_{R,S}: syllable-wise projection followed by reduction in G_{R,S}.
ReducedWord project_word(const CompatiblePair& pair, const Word& w);

}  // namespace cpsep
