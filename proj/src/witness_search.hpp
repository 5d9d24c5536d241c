#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cpsep/amalgam.hpp"

namespace cpsep::detail {

struct AgreeingHit {
  std::size_t target;
  GroupHom psi_H;
  GroupHom psi_K;
};

std::optional<AgreeingHit> first_agreeing_hit_serial(const AmalgamSpec& spec, const Word& f, const Word& g,
                                                     std::span<const FiniteGroup> catalog);
std::optional<AgreeingHit> first_agreeing_hit_parallel(const AmalgamSpec& spec, const Word& f, const Word& g,
                                                       std::span<const FiniteGroup> catalog);
std::vector<AgreeingHit> all_agreeing_hits(const AmalgamSpec& spec, const Word& f, const Word& g,
                                           std::span<const FiniteGroup> catalog);

}  // namespace cpsep::detail
