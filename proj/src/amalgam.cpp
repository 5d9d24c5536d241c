#include "cpsep/amalgam.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cpsep {

namespace {

constexpr Elem kNone = std::numeric_limits<Elem>::max();

void verify_conjugator(const AmalgamSpec& spec, const Word& x, const Word& y, const Word& z) {
  if (!equal_in_group(spec, conjugate_by(spec, x, z), y))
    throw std::logic_error("conjugator failed normal-form verification");
}

}  // namespace

// ---------------------------------------------------------------------------
// AmalgamSpec

AmalgamSpec AmalgamSpec::make(FiniteGroup h, FiniteGroup k, std::vector<Elem> a_elems, std::vector<Elem> b_elems,
                              const std::map<Elem, Elem>& phi) {
  AmalgamSpec spec(std::move(h), std::move(k));
  spec.a_ = Subgroup::from_elements(spec.h_, std::move(a_elems));
  spec.b_ = Subgroup::from_elements(spec.k_, std::move(b_elems));

  spec.phi_.assign(spec.h_.order(), kNone);
  spec.phi_inv_.assign(spec.k_.order(), kNone);
  if (phi.size() != spec.a_.size()) throw Error(ErrorKind::PhiNotIso, "phi must be defined exactly on A");
  for (const auto& [a, b] : phi) {
    if (!spec.a_.contains(a)) throw Error(ErrorKind::PhiNotIso, "phi defined outside A at " + std::to_string(a));
    if (!spec.b_.contains(b)) throw Error(ErrorKind::PhiNotIso, "phi lands outside B at " + std::to_string(a));
    if (spec.phi_inv_[b] != kNone) throw Error(ErrorKind::PhiNotIso, "phi is not injective");
    spec.phi_[a] = b;
    spec.phi_inv_[b] = a;
  }
  if (spec.a_.size() != spec.b_.size()) throw Error(ErrorKind::PhiNotIso, "|A| != |B|");
  for (Elem x : spec.a_.elements())
    for (Elem y : spec.a_.elements())
      if (spec.phi_[spec.h_.mul(x, y)] != spec.k_.mul(spec.phi_[x], spec.phi_[y]))
        throw Error(ErrorKind::PhiNotIso, "phi is not a homomorphism");

  const auto zh = center(spec.h_);
  const auto zk = center(spec.k_);
  spec.central_ = spec.a_.is_subset_of(zh) && spec.b_.is_subset_of(zk);

  auto transversal = [](const FiniteGroup& g, const Subgroup& sub, std::vector<Elem>& rep, std::vector<Elem>& part) {
    rep.assign(g.order(), kNone);
    part.assign(g.order(), kNone);
    for (Elem x = 0; x < g.order(); ++x) {
      if (rep[x] != kNone) continue;
      // x is the minimal element of its right coset sub*x
      for (Elem a : sub.elements()) {
        const Elem y = g.mul(a, x);
        rep[y] = x;
        part[y] = a;
      }
    }
  };
  transversal(spec.h_, spec.a_, spec.h_rep_, spec.h_part_);
  transversal(spec.k_, spec.b_, spec.k_rep_, spec.k_part_);
  return spec;
}

std::map<Elem, Elem> AmalgamSpec::phi_map() const {
  std::map<Elem, Elem> m;
  for (Elem a : a_.elements()) m[a] = phi_[a];
  return m;
}

Syllable AmalgamSpec::transport(Syllable s) const {
  return s.factor == Factor::H ? Syllable{Factor::K, phi_[s.elem]} : Syllable{Factor::H, phi_inv_[s.elem]};
}

// ---------------------------------------------------------------------------
// Words

void check_word(const AmalgamSpec& spec, const Word& w) {
  for (const auto& s : w)
    if (!spec.factor(s.factor).contains(s.elem))
      throw Error(ErrorKind::IndexOutOfRange, std::string(s.factor == Factor::H ? "H:" : "K:") + std::to_string(s.elem));
}

Word make_word(const AmalgamSpec& spec, const Word& raw) {
  check_word(spec, raw);
  Word w;
  for (const auto& s : raw)
    if (s.elem != 0) w.push_back(s);
  return w;
}

Word concat(const Word& u, const Word& v) {
  Word w = u;
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

Word inverse(const AmalgamSpec& spec, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->factor, spec.factor(it->factor).inv(it->elem)});
  return out;
}

Word conjugate_by(const AmalgamSpec& spec, const Word& w, const Word& z) {
  return concat(concat(inverse(spec, z), w), z);
}

ReducedWord reduce(const AmalgamSpec& spec, const Word& w) {
  check_word(spec, w);
  Word st;

  // Restores the stack invariant after the top syllable changed.
  auto settle = [&] {
    while (!st.empty()) {
      const Syllable top = st.back();
      if (top.elem == 0) {
        st.pop_back();
        continue;
      }
      if (st.size() > 1 && spec.in_amalgam(top)) {
        st.pop_back();
        Syllable& below = st.back();
        const Syllable t = top.factor == below.factor ? top : spec.transport(top);
        below.elem = spec.mul(below.factor, below.elem, t.elem);
        continue;
      }
      break;
    }
  };

  for (const Syllable& s : w) {
    if (s.elem == 0) continue;
    if (st.empty()) {
      st.push_back(s);
      continue;
    }
    Syllable& top = st.back();
    if (top.factor == s.factor) {
      top.elem = spec.mul(s.factor, top.elem, s.elem);
      settle();
    } else if (spec.in_amalgam(s)) {
      top.elem = spec.mul(top.factor, top.elem, spec.transport(s).elem);
      settle();
    } else if (st.size() == 1 && spec.in_amalgam(top)) {
      top = {s.factor, spec.mul(s.factor, spec.transport(top).elem, s.elem)};
      settle();
    } else {
      st.push_back(s);
    }
  }
  if (st.size() == 1 && st[0].factor == Factor::K && spec.in_amalgam(st[0])) st[0] = spec.transport(st[0]);
  return ReducedWord(std::move(st));
}

NormalForm normal_form(const AmalgamSpec& spec, const Word& w) {
  check_word(spec, w);
  // Built right to left: the value is amalgam_part * tail, tail reversed in `rev`.
  Elem a = 0;
  Word rev;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const Factor f = it->factor;
    const Elem a_here = f == Factor::H ? a : spec.phi(a);
    Elem y = spec.mul(f, it->elem, a_here);
    if (!rev.empty() && rev.back().factor == f) {
      y = spec.mul(f, y, rev.back().elem);
      rev.pop_back();
    }
    const Elem part = spec.amalgam_part(f, y);
    const Elem rep = spec.coset_rep(f, y);
    a = f == Factor::H ? part : spec.phi_inv(part);
    if (rep != 0) rev.push_back({f, rep});
  }
  return NormalForm{a, Word(rev.rbegin(), rev.rend())};
}

Word render(const NormalForm& nf) {
  Word w;
  if (nf.amalgam_part != 0) w.push_back({Factor::H, nf.amalgam_part});
  w.insert(w.end(), nf.tail.begin(), nf.tail.end());
  return w;
}

std::size_t length(const AmalgamSpec& spec, const Word& w) { return reduce(spec, w).length(); }

bool equal_in_group(const AmalgamSpec& spec, const Word& u, const Word& v) {
  return normal_form(spec, u) == normal_form(spec, v);
}

// ---------------------------------------------------------------------------
// Cyclic reduction and permutations

CyclicReduction cyclically_reduce(const AmalgamSpec& spec, const Word& w) {
  ReducedWord r = reduce(spec, w);
  Word z;
  while (r.length() > 1 && r[0].factor == r[r.length() - 1].factor) {
    const Syllable first = r[0];
    Word rotated(r.syllables().begin() + 1, r.syllables().end());
    rotated.push_back(first);
    r = reduce(spec, rotated);
    z.push_back(first);
  }
  return {std::move(r), std::move(z)};
}

bool is_cyclically_reduced(const AmalgamSpec& spec, const Word& w) {
  for (const auto& s : w)
    if (s.elem == 0) return false;
  if (w.size() <= 1) return true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (spec.in_amalgam(w[i])) return false;
    if (i + 1 < w.size() && w[i].factor == w[i + 1].factor) return false;
  }
  return w.front().factor != w.back().factor;
}

std::vector<ReducedWord> cyclic_permutations(const AmalgamSpec& spec, const Word& w) {
  check_word(spec, w);
  if (!is_cyclically_reduced(spec, w)) throw Error(ErrorKind::NotCyclicallyReduced, "word is not cyclically reduced");
  if (w.size() <= 1) return {ReducedWord(w)};
  std::vector<ReducedWord> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word u(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    u.insert(u.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(ReducedWord(std::move(u)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjugacy

namespace {

struct Prepared {
  CyclicReduction x, y;
};

Prepared prepare(const AmalgamSpec& spec, const Word& x, const Word& y) {
  return {cyclically_reduce(spec, x), cyclically_reduce(spec, y)};
}

// Conjugator for the original pair from one between the cyclic reductions:
// cx = zx^-1 x zx, cy = zy^-1 y zy, w^-1 cx w = cy  =>  (zx w zy^-1)^-1 x (...) = y.
Word lift_conjugator(const AmalgamSpec& spec, const Prepared& p, const Word& w) {
  return concat(concat(p.x.conjugator, w), inverse(spec, p.y.conjugator));
}

// Settles the cases that do not depend on centrality. Returns true when `v` is final.
bool trivial_cases(const Prepared& p, ConjugacyVerdict& v) {
  const std::size_t lx = p.x.word.length(), ly = p.y.word.length();
  if (lx != ly) {
    v.reason = "cyclically reduced lengths differ (" + std::to_string(lx) + " vs " + std::to_string(ly) + ")";
    return true;
  }
  if (lx == 0) {
    v.conjugate = true;
    v.reason = "both trivial";
    return true;
  }
  return false;
}

}  // namespace

ConjugacyVerdict is_conjugate_central(const AmalgamSpec& spec, const Word& x, const Word& y) {
  if (!spec.is_central()) throw Error(ErrorKind::NotCentral, "amalgamated subgroups are not central");
  ConjugacyVerdict v;
  const auto p = prepare(spec, x, y);
  if (trivial_cases(p, v)) return v;

  const Word& cx = p.x.word.syllables();
  const Word& cy = p.y.word.syllables();

  if (cx.size() == 1) {
    // Amalgamated elements are canonically tagged H by reduce, so a tag mismatch
    // means one side lies outside the amalgam and, A and B being central, the
    // two cannot meet.
    if (cx[0].factor != cy[0].factor) {
      v.reason = "length 1 in different factors";
      v.compared = {cx};
      return v;
    }
    const auto& g = spec.factor(cx[0].factor);
    if (auto c = find_conjugator(g, cx[0].elem, cy[0].elem)) {
      v.conjugate = true;
      Word w;
      if (*c != 0) w.push_back({cx[0].factor, *c});
      v.conjugator = lift_conjugator(spec, p, w);
      v.reason = "conjugate in factor";
      verify_conjugator(spec, x, y, v.conjugator);
      return v;
    }
    v.reason = "not conjugate in factor";
    v.compared = {cx};
    return v;
  }

  const auto target = normal_form(spec, cy);
  const auto perms = cyclic_permutations(spec, cx);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (normal_form(spec, perms[i].syllables()) == target) {
      v.conjugate = true;
      v.conjugator = lift_conjugator(spec, p, Word(cx.begin(), cx.begin() + static_cast<std::ptrdiff_t>(i)));
      v.reason = "cyclic permutation " + std::to_string(i);
      verify_conjugator(spec, x, y, v.conjugator);
      return v;
    }
    v.compared.push_back(perms[i].syllables());
  }
  v.reason = "no cyclic permutation matches";
  return v;
}

ConjugacyVerdict is_conjugate_general(const AmalgamSpec& spec, const Word& x, const Word& y) {
  ConjugacyVerdict v;
  const auto p = prepare(spec, x, y);
  if (trivial_cases(p, v)) return v;

  const Word& cx = p.x.word.syllables();
  const Word& cy = p.y.word.syllables();

  if (cx.size() == 1) {
    // Closure of the factor class of cx under transport through A = B.
    const std::size_t nh = spec.H().order();
    auto key = [&](Syllable s) { return s.factor == Factor::H ? s.elem : nh + s.elem; };
    auto canonical = [&](Syllable s) { return s.factor == Factor::K && spec.in_amalgam(s) ? spec.transport(s) : s; };
    std::vector<int> seen(nh + spec.K().order(), 0);
    std::vector<std::pair<Syllable, Word>> queue{{cx[0], {}}};
    seen[key(cx[0])] = 1;
    const Syllable goal = cy[0];
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const auto [node, z] = queue[i];
      if (node == goal) {
        v.conjugate = true;
        v.conjugator = lift_conjugator(spec, p, z);
        v.reason = "reached through factor conjugation and amalgam transport";
        verify_conjugator(spec, x, y, v.conjugator);
        return v;
      }
      auto expand = [&](Syllable from) {
        const auto& g = spec.factor(from.factor);
        for (Elem c = 0; c < g.order(); ++c) {
          const Syllable to = canonical({from.factor, g.conj(from.elem, c)});
          if (seen[key(to)]) continue;
          seen[key(to)] = 1;
          Word z2 = z;
          if (c != 0) z2.push_back({from.factor, c});
          queue.push_back({to, std::move(z2)});
        }
      };
      expand(node);
      if (spec.in_amalgam(node)) expand(spec.transport(node));
    }
    for (const auto& [node, z] : queue) v.compared.push_back({node});
    v.reason = "not in the transported conjugacy closure";
    return v;
  }

  const auto target = normal_form(spec, cy);
  const auto perms = cyclic_permutations(spec, cx);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (Elem a : spec.A().elements()) {
      Word za;
      if (a != 0) za.push_back({Factor::H, a});
      const Word candidate = conjugate_by(spec, perms[i].syllables(), za);
      if (normal_form(spec, candidate) == target) {
        v.conjugate = true;
        Word w(cx.begin(), cx.begin() + static_cast<std::ptrdiff_t>(i));
        w.insert(w.end(), za.begin(), za.end());
        v.conjugator = lift_conjugator(spec, p, w);
        v.reason = "amalgam conjugate of cyclic permutation " + std::to_string(i);
        verify_conjugator(spec, x, y, v.conjugator);
        return v;
      }
      v.compared.push_back(candidate);
    }
  }
  v.reason = "no amalgam conjugate of a cyclic permutation matches";
  return v;
}

}  // namespace cpsep
