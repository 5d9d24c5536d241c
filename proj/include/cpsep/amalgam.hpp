#pragma once

// Words in G = (H * K; A = B, phi) for finite H and K.
//
// Two independent routes to equality live here: `reduce` rewrites a word by
// merging neighbours and absorbing amalgamated syllables, while `normal_form`
// pushes the word through fixed right transversals of A in H and B in K.
// Tests play them against each other.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cpsep/fingroup.hpp"

namespace cpsep {

enum class Factor : std::uint8_t { H = 0, K = 1 };

inline Factor other(Factor f) { return f == Factor::H ? Factor::K : Factor::H; }

struct Syllable {
  Factor factor;
  Elem elem;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// A word over the two factors. The empty word is the identity of G.
using Word = std::vector<Syllable>;

class AmalgamSpec {
 public:
  // Checks that a_elems, b_elems are subgroups and that phi (a -> phi(a) for
  // every a in A) is an isomorphism A -> B. Throws NotSubgroup / PhiNotIso.
  static AmalgamSpec make(FiniteGroup h, FiniteGroup k, std::vector<Elem> a_elems, std::vector<Elem> b_elems,
                          const std::map<Elem, Elem>& phi);

  const FiniteGroup& H() const noexcept { return h_; }
  const FiniteGroup& K() const noexcept { return k_; }
  const Subgroup& A() const noexcept { return a_; }
  const Subgroup& B() const noexcept { return b_; }
  const FiniteGroup& factor(Factor f) const noexcept { return f == Factor::H ? h_ : k_; }
  const Subgroup& amalgamated(Factor f) const noexcept { return f == Factor::H ? a_ : b_; }

  Elem phi(Elem a) const { return phi_[a]; }
  Elem phi_inv(Elem b) const { return phi_inv_[b]; }
  std::map<Elem, Elem> phi_map() const;

  // A <= Z(H) and B <= Z(K).
  bool is_central() const noexcept { return central_; }

  bool in_amalgam(Syllable s) const { return amalgamated(s.factor).contains(s.elem); }
  // Same element of G, written in the other factor. Requires in_amalgam(s).
  Syllable transport(Syllable s) const;
  Elem mul(Factor f, Elem x, Elem y) const { return factor(f).mul(x, y); }

  // x = amalgam_part(x) * coset_rep(x) with coset_rep minimal in the right coset.
  Elem coset_rep(Factor f, Elem x) const { return f == Factor::H ? h_rep_[x] : k_rep_[x]; }
  Elem amalgam_part(Factor f, Elem x) const { return f == Factor::H ? h_part_[x] : k_part_[x]; }

  friend bool operator==(const AmalgamSpec& a, const AmalgamSpec& b) {
    return a.h_ == b.h_ && a.k_ == b.k_ && a.a_ == b.a_ && a.b_ == b.b_ && a.phi_ == b.phi_;
  }

 private:
  AmalgamSpec(FiniteGroup h, FiniteGroup k) : h_(std::move(h)), k_(std::move(k)) {}

  FiniteGroup h_, k_;
  Subgroup a_, b_;
  std::vector<Elem> phi_, phi_inv_;
  bool central_ = false;
  std::vector<Elem> h_rep_, h_part_, k_rep_, k_part_;
};

inline AmalgamSpec validate_spec(FiniteGroup h, FiniteGroup k, std::vector<Elem> a_elems,
                                 std::vector<Elem> b_elems, const std::map<Elem, Elem>& phi) {
  return AmalgamSpec::make(std::move(h), std::move(k), std::move(a_elems), std::move(b_elems), phi);
}

// Reduced form: adjacent syllables alternate factors, and when there is more than
// one syllable none lies in the amalgamated subgroup. A single amalgamated
// syllable is always tagged H.
class ReducedWord {
 public:
  ReducedWord() = default;

  const Word& syllables() const noexcept { return syllables_; }
  std::size_t length() const noexcept { return syllables_.size(); }
  bool empty() const noexcept { return syllables_.empty(); }
  const Syllable& operator[](std::size_t i) const { return syllables_[i]; }

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

 private:
  explicit ReducedWord(Word w) : syllables_(std::move(w)) {}
  friend ReducedWord reduce(const AmalgamSpec&, const Word&);
  friend std::vector<ReducedWord> cyclic_permutations(const AmalgamSpec&, const Word&);

  Word syllables_;
};

struct NormalForm {
  Elem amalgam_part = 0;  // element of A, as an element of H
  Word tail;              // alternating non-identity transversal representatives

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

// Throws IndexOutOfRange for elements outside their factor. Identity syllables are dropped.
Word make_word(const AmalgamSpec& spec, const Word& raw);
void check_word(const AmalgamSpec& spec, const Word& w);

Word concat(const Word& u, const Word& v);
Word inverse(const AmalgamSpec& spec, const Word& w);
// z^-1 w z
Word conjugate_by(const AmalgamSpec& spec, const Word& w, const Word& z);

ReducedWord reduce(const AmalgamSpec& spec, const Word& w);
NormalForm normal_form(const AmalgamSpec& spec, const Word& w);
Word render(const NormalForm& nf);
std::size_t length(const AmalgamSpec& spec, const Word& w);
bool equal_in_group(const AmalgamSpec& spec, const Word& u, const Word& v);

struct CyclicReduction {
  ReducedWord word;
  Word conjugator;  // conjugator^-1 * input * conjugator == word in G
};

CyclicReduction cyclically_reduce(const AmalgamSpec& spec, const Word& w);
// Checks the literal syllable sequence, not the group element.
bool is_cyclically_reduced(const AmalgamSpec& spec, const Word& w);
// Throws NotCyclicallyReduced.
std::vector<ReducedWord> cyclic_permutations(const AmalgamSpec& spec, const Word& w);

struct ConjugacyVerdict {
  bool conjugate = false;
  Word conjugator;             // z with z^-1 x z == y, when conjugate
  std::vector<Word> compared;  // exhausted candidates, when not conjugate
  std::string reason;
};

// Requires spec.is_central(); throws NotCentral otherwise.
ConjugacyVerdict is_conjugate_central(const AmalgamSpec& spec, const Word& x, const Word& y);
ConjugacyVerdict is_conjugate_general(const AmalgamSpec& spec, const Word& x, const Word& y);

}  // namespace cpsep
