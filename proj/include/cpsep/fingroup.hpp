#pragma once

// Finite groups given by their multiplication table.
//
// Elements are indices 0..order-1 and 0 is always the identity. Tables whose
// identity sits elsewhere are relabelled on construction by swapping it with 0.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpsep/error.hpp"

namespace cpsep {

using Elem = std::uint32_t;

class FiniteGroup {
 public:
  // Validated construction from a square table. Throws Error(NotAGroup).
  static FiniteGroup from_table(std::size_t order, const std::vector<std::vector<Elem>>& table,
                                std::vector<std::string> names = {});

  // Skips validation; `flat` must already be a group table with identity 0.
  static FiniteGroup from_trusted_table(std::size_t order, std::vector<Elem> flat);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  // D_n of order 2n; r^i s^j is stored at index i + n*j.
  static FiniteGroup dihedral(std::size_t n);
  // Dicyclic group of order 4m (generalized quaternion when 4m is a power of 2);
  // a^i x^j is stored at index i + 2m*j.
  static FiniteGroup dicyclic(std::size_t m);
  // (g, h) is stored at index g * |second| + h.
  static FiniteGroup direct_product(const FiniteGroup& first, const FiniteGroup& second);

  std::size_t order() const noexcept { return order_; }
  Elem mul(Elem a, Elem b) const { return table_[a * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem pow(Elem a, long long k) const;
  // g^-1 a g
  Elem conj(Elem a, Elem g) const { return mul(mul(inv(g), a), g); }
  std::size_t element_order(Elem a) const;
  bool is_abelian() const;
  bool contains(Elem a) const noexcept { return a < order_; }

  const std::vector<std::string>& names() const noexcept { return names_; }
  std::string name_of(Elem a) const;
  std::optional<Elem> find_name(const std::string& name) const;

  // Free-text presentation carried along for documentation only.
  std::optional<std::string> presentation_note;

  // Row-major table, identity first.
  std::vector<std::vector<Elem>> rows() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_ && a.names_ == b.names_ &&
           a.presentation_note == b.presentation_note;
  }

 private:
  FiniteGroup() = default;
  void finish();

  std::size_t order_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::string> names_;
};

// A subgroup as a sorted element set of its parent group.
class Subgroup {
 public:
  Subgroup() = default;
  // Validates closure; throws Error(NotSubgroup) or Error(IndexOutOfRange).
  static Subgroup from_elements(const FiniteGroup& parent, std::vector<Elem> elements);
  static Subgroup whole(const FiniteGroup& parent);
  static Subgroup trivial(const FiniteGroup& parent);

  const std::vector<Elem>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t parent_order() const noexcept { return member_.size(); }
  bool contains(Elem a) const noexcept { return a < member_.size() && member_[a]; }
  bool is_subset_of(const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.elements_ == b.elements_ && a.member_.size() == b.member_.size();
  }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements_ < b.elements_;
  }

 private:
  static Subgroup unchecked(std::size_t parent_order, std::vector<Elem> sorted);
  friend Subgroup subgroup_closure(const FiniteGroup&, std::span<const Elem>);
  friend Subgroup intersect(const Subgroup&, const Subgroup&);

  std::vector<Elem> elements_;
  std::vector<bool> member_;
};

class GroupHom {
 public:
  // Checks images(x*y) == images(x)*images(y); throws Error(NotAHom).
  static GroupHom make(const FiniteGroup& source, const FiniteGroup& target, std::vector<Elem> images);
  static GroupHom identity(const FiniteGroup& group);
  static GroupHom trivial(const FiniteGroup& source, const FiniteGroup& target);
  // No homomorphism check; for callers that have already established the law.
  static GroupHom unchecked(std::vector<Elem> images, std::size_t target_order);

  Elem operator()(Elem x) const { return images_[x]; }
  const std::vector<Elem>& images() const noexcept { return images_; }
  std::size_t source_order() const noexcept { return images_.size(); }
  std::size_t target_order() const noexcept { return target_order_; }
  bool is_injective() const;
  // this then next
  GroupHom then(const GroupHom& next) const;

  friend bool operator==(const GroupHom&, const GroupHom&) = default;

 private:
  std::vector<Elem> images_;
  std::size_t target_order_ = 0;
};

Subgroup subgroup_closure(const FiniteGroup& group, std::span<const Elem> generators);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
// Smallest subgroup containing both.
Subgroup join(const FiniteGroup& group, const Subgroup& a, const Subgroup& b);
Subgroup image(const GroupHom& hom, const FiniteGroup& target, const Subgroup& sub);
Subgroup preimage(const GroupHom& hom, const FiniteGroup& source, const Subgroup& sub);

bool is_normal(const FiniteGroup& group, const Subgroup& sub);
Subgroup normal_closure(const FiniteGroup& group, std::span<const Elem> generators);
Subgroup normalizer(const FiniteGroup& group, const Subgroup& sub);
Subgroup center(const FiniteGroup& group);

// All normal subgroups sorted by size, then lexicographically.
std::vector<Subgroup> enumerate_normal_subgroups(const FiniteGroup& group);

// A subgroup regarded as a group in its own right; element i of the result is
// sub.elements()[i].
FiniteGroup subgroup_as_group(const FiniteGroup& group, const Subgroup& sub);

struct Quotient {
  FiniteGroup group;
  GroupHom projection;
  // representatives[c] is the minimal element of coset c.
  std::vector<Elem> representatives;
};

// Cosets are labelled by ascending minimal representative, so the identity coset is 0.
Quotient quotient(const FiniteGroup& group, const Subgroup& normal_sub);

// Classes sorted by minimal element.
std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& group);
// class_of[x] = position of x's class in conjugacy_classes(group).
std::vector<std::size_t> conjugacy_class_index(const FiniteGroup& group);
std::optional<Elem> find_conjugator(const FiniteGroup& group, Elem x, Elem y);

// Greedy minimal generating sequence: repeatedly add the smallest element outside
// the closure of what has been chosen.
std::vector<Elem> greedy_generators(const FiniteGroup& group);

// Homomorphisms source -> target extending `partial` (element -> required image),
// in lexicographic order of the images of greedy_generators(source).
// Throws Error(InconsistentPartial) when `partial` does not define a homomorphism
// on the subgroup its keys generate.
std::vector<GroupHom> enumerate_homs(const FiniteGroup& source, const FiniteGroup& target,
                                     const std::map<Elem, Elem>& partial = {});

bool is_prime(std::size_t n);
// Throws Error(NotPrime) when p is not prime.
void require_prime(std::size_t p);
bool is_power_of(std::size_t n, std::size_t p);

bool is_p_group(const FiniteGroup& group, std::size_t p);
std::size_t index(const FiniteGroup& group, const Subgroup& sub);
bool is_p_power_index(const FiniteGroup& group, const Subgroup& sub, std::size_t p);
bool is_subnormal_p_index(const FiniteGroup& group, const Subgroup& sub, std::size_t p);
bool is_p_isolated(const FiniteGroup& group, const Subgroup& sub, std::size_t p);
bool is_p_prime_isolated(const FiniteGroup& group, const Subgroup& sub, std::size_t p);

}  // namespace cpsep
