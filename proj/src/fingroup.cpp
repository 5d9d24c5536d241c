#include "cpsep/fingroup.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

namespace cpsep {

namespace {

constexpr Elem kUnset = std::numeric_limits<Elem>::max();

std::vector<Elem> sorted_unique(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::from_table(std::size_t order, const std::vector<std::vector<Elem>>& table,
                                    std::vector<std::string> names) {
  if (order == 0) throw Error(NotAGroupReason::NoIdentity, "empty group");
  if (table.size() != order) throw Error(NotAGroupReason::NotALatinSquare, "table must have `order` rows");
  for (const auto& row : table) {
    if (row.size() != order) throw Error(NotAGroupReason::NotALatinSquare, "table must have `order` columns");
    for (Elem x : row) {
      if (x >= order) throw Error(NotAGroupReason::NotALatinSquare, "entry out of range");
    }
  }
  if (!names.empty() && names.size() != order) throw Error(ErrorKind::Parse, "names must list every element");

  std::vector<char> seen(order);
  for (std::size_t i = 0; i < order; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < order; ++j) {
      if (seen[table[i][j]]++) throw Error(NotAGroupReason::NotALatinSquare, "row " + std::to_string(i));
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < order; ++j) {
      if (seen[table[j][i]]++) throw Error(NotAGroupReason::NotALatinSquare, "column " + std::to_string(i));
    }
  }

  std::optional<Elem> identity;
  for (std::size_t e = 0; e < order && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < order && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = static_cast<Elem>(e);
  }
  if (!identity) throw Error(NotAGroupReason::NoIdentity, "no two-sided identity");
  const Elem e = *identity;

  for (std::size_t a = 0; a < order; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < order && !found; ++b) found = table[a][b] == e && table[b][a] == e;
    if (!found) throw Error(NotAGroupReason::NoInverse, "element " + std::to_string(a));
  }

  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      const Elem ab = table[a][b];
      for (std::size_t c = 0; c < order; ++c) {
        if (table[ab][c] != table[a][table[b][c]]) {
          throw Error(NotAGroupReason::NonAssociative,
                      "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
    }
  }

  // Relabel so that the identity is 0.
  std::vector<Elem> relabel(order);
  std::iota(relabel.begin(), relabel.end(), Elem{0});
  std::swap(relabel[0], relabel[e]);

  FiniteGroup g;
  g.order_ = order;
  g.table_.assign(order * order, 0);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      g.table_[relabel[a] * order + relabel[b]] = relabel[table[a][b]];
    }
  }
  if (!names.empty()) {
    g.names_.resize(order);
    for (std::size_t a = 0; a < order; ++a) g.names_[relabel[a]] = std::move(names[a]);
  }
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_trusted_table(std::size_t order, std::vector<Elem> flat) {
  FiniteGroup g;
  g.order_ = order;
  g.table_ = std::move(flat);
  g.finish();
  return g;
}

void FiniteGroup::finish() {
  inverse_.assign(order_, 0);
  for (Elem a = 0; a < order_; ++a) {
    for (Elem b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) {
        inverse_[a] = b;
        break;
      }
    }
  }
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  std::vector<Elem> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = static_cast<Elem>((i + j) % n);
  return from_trusted_table(n, std::move(flat));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  const std::size_t order = 2 * n;
  std::vector<Elem> flat(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t i = x % n, j = x / n;
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t k = y % n, l = y / n;
      // r^i s^j r^k s^l = r^(i ± k) s^(j+l)
      const std::size_t r = j == 0 ? (i + k) % n : (i + n - k) % n;
      flat[x * order + y] = static_cast<Elem>(r + n * ((j + l) % 2));
    }
  }
  return from_trusted_table(order, std::move(flat));
}

FiniteGroup FiniteGroup::dicyclic(std::size_t m) {
  const std::size_t n = 2 * m;  // order of a
  const std::size_t order = 4 * m;
  std::vector<Elem> flat(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t i = x % n, j = x / n;
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t k = y % n, l = y / n;
      std::size_t r, s;
      if (j == 0) {
        r = (i + k) % n;
        s = l;
      } else if (l == 0) {
        r = (i + n - k) % n;
        s = 1;
      } else {
        // x a^k x = a^-k x^2 = a^(m-k)
        r = (i + n - k + m) % n;
        s = 0;
      }
      flat[x * order + y] = static_cast<Elem>(r + n * s);
    }
  }
  return from_trusted_table(order, std::move(flat));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& first, const FiniteGroup& second) {
  const std::size_t m = first.order(), n = second.order(), order = m * n;
  std::vector<Elem> flat(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    for (std::size_t y = 0; y < order; ++y) {
      const Elem a = first.mul(static_cast<Elem>(x / n), static_cast<Elem>(y / n));
      const Elem b = second.mul(static_cast<Elem>(x % n), static_cast<Elem>(y % n));
      flat[x * order + y] = static_cast<Elem>(a * n + b);
    }
  }
  return from_trusted_table(order, std::move(flat));
}

Elem FiniteGroup::pow(Elem a, long long k) const {
  const auto n = static_cast<long long>(element_order(a));
  k %= n;
  if (k < 0) k += n;
  Elem r = 0;
  for (long long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t n = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++n;
  return n;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a = 0; a < order_; ++a)
    for (Elem b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::string FiniteGroup::name_of(Elem a) const {
  if (a < names_.size()) return names_[a];
  return std::to_string(a);
}

std::optional<Elem> FiniteGroup::find_name(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Elem>(it - names_.begin());
}

std::vector<std::vector<Elem>> FiniteGroup::rows() const {
  std::vector<std::vector<Elem>> out(order_);
  for (std::size_t i = 0; i < order_; ++i) out[i].assign(table_.begin() + i * order_, table_.begin() + (i + 1) * order_);
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup Subgroup::unchecked(std::size_t parent_order, std::vector<Elem> sorted) {
  Subgroup s;
  s.member_.assign(parent_order, false);
  for (Elem x : sorted) s.member_[x] = true;
  s.elements_ = std::move(sorted);
  return s;
}

Subgroup Subgroup::from_elements(const FiniteGroup& parent, std::vector<Elem> elements) {
  for (Elem x : elements) {
    if (!parent.contains(x)) throw Error(ErrorKind::IndexOutOfRange, "element " + std::to_string(x));
  }
  auto s = unchecked(parent.order(), sorted_unique(std::move(elements)));
  if (!s.contains(0)) throw Error(ErrorKind::NotSubgroup, "identity missing");
  for (Elem a : s.elements_)
    for (Elem b : s.elements_)
      if (!s.contains(parent.mul(a, b))) throw Error(ErrorKind::NotSubgroup, "not closed under product");
  return s;
}

Subgroup Subgroup::whole(const FiniteGroup& parent) {
  std::vector<Elem> all(parent.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return unchecked(parent.order(), std::move(all));
}

Subgroup Subgroup::trivial(const FiniteGroup& parent) { return unchecked(parent.order(), {0}); }

bool Subgroup::is_subset_of(const Subgroup& other) const {
  return std::all_of(elements_.begin(), elements_.end(), [&](Elem x) { return other.contains(x); });
}

// ---------------------------------------------------------------------------
// GroupHom

GroupHom GroupHom::make(const FiniteGroup& source, const FiniteGroup& target, std::vector<Elem> images) {
  if (images.size() != source.order()) throw Error(ErrorKind::NotAHom, "image count differs from source order");
  for (Elem y : images)
    if (!target.contains(y)) throw Error(ErrorKind::IndexOutOfRange, "image " + std::to_string(y));
  for (Elem a = 0; a < source.order(); ++a)
    for (Elem b = 0; b < source.order(); ++b)
      if (images[source.mul(a, b)] != target.mul(images[a], images[b]))
        throw Error(ErrorKind::NotAHom, "law fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return unchecked(std::move(images), target.order());
}

GroupHom GroupHom::unchecked(std::vector<Elem> images, std::size_t target_order) {
  GroupHom h;
  h.images_ = std::move(images);
  h.target_order_ = target_order;
  return h;
}

GroupHom GroupHom::identity(const FiniteGroup& group) {
  std::vector<Elem> img(group.order());
  std::iota(img.begin(), img.end(), Elem{0});
  return unchecked(std::move(img), group.order());
}

GroupHom GroupHom::trivial(const FiniteGroup& source, const FiniteGroup& target) {
  return unchecked(std::vector<Elem>(source.order(), 0), target.order());
}

bool GroupHom::is_injective() const {
  return static_cast<std::size_t>(std::count(images_.begin(), images_.end(), Elem{0})) == 1;
}

GroupHom GroupHom::then(const GroupHom& next) const {
  std::vector<Elem> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) img[i] = next(images_[i]);
  return unchecked(std::move(img), next.target_order());
}

// ---------------------------------------------------------------------------
// Subgroup machinery

Subgroup subgroup_closure(const FiniteGroup& group, std::span<const Elem> generators) {
  for (Elem g : generators)
    if (!group.contains(g)) throw Error(ErrorKind::IndexOutOfRange, "generator " + std::to_string(g));
  std::vector<bool> in(group.order(), false);
  std::vector<Elem> elems{0};
  in[0] = true;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (Elem g : generators) {
      const Elem y = group.mul(elems[i], g);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup::unchecked(group.order(), std::move(elems));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  return Subgroup::unchecked(a.parent_order(), std::move(out));
}

Subgroup join(const FiniteGroup& group, const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> gens = a.elements();
  gens.insert(gens.end(), b.elements().begin(), b.elements().end());
  return subgroup_closure(group, gens);
}

Subgroup image(const GroupHom& hom, const FiniteGroup& target, const Subgroup& sub) {
  std::vector<Elem> img;
  img.reserve(sub.size());
  for (Elem x : sub.elements()) img.push_back(hom(x));
  return Subgroup::from_elements(target, std::move(img));
}

Subgroup preimage(const GroupHom& hom, const FiniteGroup& source, const Subgroup& sub) {
  std::vector<Elem> pre;
  for (Elem x = 0; x < source.order(); ++x)
    if (sub.contains(hom(x))) pre.push_back(x);
  return Subgroup::from_elements(source, std::move(pre));
}

bool is_normal(const FiniteGroup& group, const Subgroup& sub) {
  for (Elem h : sub.elements())
    for (Elem g = 0; g < group.order(); ++g)
      if (!sub.contains(group.conj(h, g))) return false;
  return true;
}

namespace {

// Normal closure of `gens` inside the subgroup `within`.
Subgroup normal_closure_in(const FiniteGroup& group, const Subgroup& within, std::span<const Elem> gens) {
  std::vector<Elem> conjugates;
  for (Elem h : gens)
    for (Elem g : within.elements()) conjugates.push_back(group.conj(h, g));
  return subgroup_closure(group, sorted_unique(std::move(conjugates)));
}

}  // namespace

Subgroup normal_closure(const FiniteGroup& group, std::span<const Elem> generators) {
  for (Elem g : generators)
    if (!group.contains(g)) throw Error(ErrorKind::IndexOutOfRange, "generator " + std::to_string(g));
  return normal_closure_in(group, Subgroup::whole(group), generators);
}

Subgroup normalizer(const FiniteGroup& group, const Subgroup& sub) {
  std::vector<Elem> out;
  for (Elem g = 0; g < group.order(); ++g) {
    bool ok = true;
    for (Elem h : sub.elements()) {
      if (!sub.contains(group.conj(h, g))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(g);
  }
  return Subgroup::from_elements(group, std::move(out));
}

Subgroup center(const FiniteGroup& group) {
  std::vector<Elem> out;
  for (Elem z = 0; z < group.order(); ++z) {
    bool central = true;
    for (Elem g = 0; g < group.order() && central; ++g) central = group.mul(z, g) == group.mul(g, z);
    if (central) out.push_back(z);
  }
  return Subgroup::from_elements(group, std::move(out));
}

std::vector<Subgroup> enumerate_normal_subgroups(const FiniteGroup& group) {
  // Every normal subgroup is a union of classes, so it is reached from {0} by
  // repeatedly adjoining one class and closing.
  const auto classes = conjugacy_classes(group);
  std::set<Subgroup> found{Subgroup::trivial(group)};
  std::deque<Subgroup> pending{Subgroup::trivial(group)};
  while (!pending.empty()) {
    Subgroup n = std::move(pending.front());
    pending.pop_front();
    for (const auto& cls : classes) {
      if (n.contains(cls.front())) continue;
      std::vector<Elem> gens = n.elements();
      gens.insert(gens.end(), cls.begin(), cls.end());
      Subgroup m = subgroup_closure(group, gens);
      if (found.insert(m).second) pending.push_back(std::move(m));
    }
  }
  return {found.begin(), found.end()};
}

FiniteGroup subgroup_as_group(const FiniteGroup& group, const Subgroup& sub) {
  const auto& el = sub.elements();
  const std::size_t n = el.size();
  std::vector<Elem> pos(group.order(), kUnset);
  for (std::size_t i = 0; i < n; ++i) pos[el[i]] = static_cast<Elem>(i);
  std::vector<Elem> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = pos[group.mul(el[i], el[j])];
  return FiniteGroup::from_trusted_table(n, std::move(flat));
}

Quotient quotient(const FiniteGroup& group, const Subgroup& normal_sub) {
  if (normal_sub.parent_order() != group.order() || !is_normal(group, normal_sub))
    throw Error(ErrorKind::NotNormal, "quotient needs a normal subgroup");
  const std::size_t n = group.order();
  std::vector<Elem> rep_of(n, kUnset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < n; ++x) {
    if (rep_of[x] != kUnset) continue;
    reps.push_back(x);  // x is minimal in its coset because cosets are visited in order
    for (Elem k : normal_sub.elements()) rep_of[group.mul(x, k)] = x;
  }
  std::vector<Elem> label(n, kUnset);
  for (std::size_t c = 0; c < reps.size(); ++c) label[reps[c]] = static_cast<Elem>(c);
  std::vector<Elem> proj(n);
  for (Elem x = 0; x < n; ++x) proj[x] = label[rep_of[x]];

  const std::size_t m = reps.size();
  std::vector<Elem> flat(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) flat[i * m + j] = proj[group.mul(reps[i], reps[j])];
  auto q = FiniteGroup::from_trusted_table(m, std::move(flat));
  return Quotient{std::move(q), GroupHom::unchecked(std::move(proj), m), std::move(reps)};
}

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& group) {
  std::vector<bool> seen(group.order(), false);
  std::vector<std::vector<Elem>> classes;
  for (Elem x = 0; x < group.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Elem> cls;
    for (Elem g = 0; g < group.order(); ++g) {
      const Elem y = group.conj(x, g);
      if (!seen[y]) {
        seen[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<std::size_t> conjugacy_class_index(const FiniteGroup& group) {
  std::vector<std::size_t> idx(group.order());
  const auto classes = conjugacy_classes(group);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (Elem x : classes[c]) idx[x] = c;
  return idx;
}

std::optional<Elem> find_conjugator(const FiniteGroup& group, Elem x, Elem y) {
  for (Elem g = 0; g < group.order(); ++g)
    if (group.conj(x, g) == y) return g;
  return std::nullopt;
}

std::vector<Elem> greedy_generators(const FiniteGroup& group) {
  std::vector<Elem> gens;
  Subgroup span = Subgroup::trivial(group);
  for (Elem x = 0; x < group.order(); ++x) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = subgroup_closure(group, gens);
  }
  return gens;
}

// ---------------------------------------------------------------------------
// Homomorphism enumeration

namespace {

// Propagates generator images over the Cayley graph of <gens>. Every edge
// x -> x*s is checked, which is exactly the homomorphism law on <gens>.
// Elements outside <gens> stay kUnset.
bool propagate(const FiniteGroup& source, const FiniteGroup& target, std::span<const Elem> gens,
               std::span<const Elem> gen_images, std::vector<Elem>& map) {
  map.assign(source.order(), kUnset);
  map[0] = 0;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Elem y = source.mul(x, gens[k]);
      const Elem v = target.mul(map[x], gen_images[k]);
      if (map[y] == kUnset) {
        map[y] = v;
        queue.push_back(y);
      } else if (map[y] != v) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<GroupHom> enumerate_homs(const FiniteGroup& source, const FiniteGroup& target,
                                     const std::map<Elem, Elem>& partial) {
  std::vector<Elem> keys, values;
  for (const auto& [k, v] : partial) {
    if (!source.contains(k) || !target.contains(v))
      throw Error(ErrorKind::IndexOutOfRange, "partial entry " + std::to_string(k) + "->" + std::to_string(v));
    keys.push_back(k);
    values.push_back(v);
  }
  std::vector<Elem> scratch;
  if (!propagate(source, target, keys, values, scratch))
    throw Error(ErrorKind::InconsistentPartial, "prescribed images violate a relation");

  const auto gens = greedy_generators(source);
  std::vector<std::size_t> gen_order(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) gen_order[i] = source.element_order(gens[i]);
  std::vector<std::size_t> target_elem_order(target.order());
  for (Elem t = 0; t < target.order(); ++t) target_elem_order[t] = target.element_order(t);

  std::vector<GroupHom> out;
  std::vector<Elem> images;
  std::vector<Elem> map;

  auto agrees_with_partial = [&](const std::vector<Elem>& m) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (m[keys[i]] != kUnset && m[keys[i]] != values[i]) return false;
    return true;
  };

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == gens.size()) {
      out.push_back(GroupHom::unchecked(map, target.order()));
      return;
    }
    for (Elem t = 0; t < target.order(); ++t) {
      if (gen_order[depth] % target_elem_order[t] != 0) continue;
      images.push_back(t);
      if (propagate(source, target, std::span(gens).first(depth + 1), images, map) && agrees_with_partial(map))
        self(self, depth + 1);
      images.pop_back();
    }
  };
  if (gens.empty()) {
    map.assign(source.order(), 0);
    out.push_back(GroupHom::unchecked(map, target.order()));
    return out;
  }
  recurse(recurse, 0);
  return out;
}

// ---------------------------------------------------------------------------
// p-group predicates

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_prime(std::size_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
}

bool is_power_of(std::size_t n, std::size_t p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

bool is_p_group(const FiniteGroup& group, std::size_t p) {
  require_prime(p);
  return is_power_of(group.order(), p);
}

std::size_t index(const FiniteGroup& group, const Subgroup& sub) { return group.order() / sub.size(); }

bool is_p_power_index(const FiniteGroup& group, const Subgroup& sub, std::size_t p) {
  require_prime(p);
  return is_power_of(index(group, sub), p);
}

bool is_subnormal_p_index(const FiniteGroup& group, const Subgroup& sub, std::size_t p) {
  require_prime(p);
  // Any normal series from sub to group has step indices dividing [G:H], so the
  // p-power condition is global; subnormality is decided by the descending
  // series of successive normal closures, which stalls above sub exactly when
  // sub is not subnormal.
  if (!is_power_of(index(group, sub), p)) return false;
  Subgroup current = Subgroup::whole(group);
  while (!(current == sub)) {
    Subgroup next = normal_closure_in(group, current, sub.elements());
    if (next == current) return false;
    current = std::move(next);
  }
  return true;
}

bool is_p_isolated(const FiniteGroup& group, const Subgroup& sub, std::size_t p) {
  require_prime(p);
  for (Elem y = 0; y < group.order(); ++y)
    if (sub.contains(group.pow(y, static_cast<long long>(p))) && !sub.contains(y)) return false;
  return true;
}

bool is_p_prime_isolated(const FiniteGroup& group, const Subgroup& sub, std::size_t p) {
  require_prime(p);
  for (std::size_t q = 2; q <= group.order(); ++q) {
    if (q == p || !is_prime(q) || group.order() % q != 0) continue;
    if (!is_p_isolated(group, sub, q)) return false;
  }
  return true;
}

}  // namespace cpsep
