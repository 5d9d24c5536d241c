#include <doctest.h>

#include "cpsep/amalgam.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cpsep;
using fixture::H;
using fixture::K;

TEST_CASE("spec validation") {
  const auto s = fixture::amalg1();
  CHECK(s.is_central());
  CHECK_FALSE(fixture::s3_c6().is_central());

  const auto c4 = FiniteGroup::cyclic(4);
  try {
    AmalgamSpec::make(c4, c4, {0, 2}, {0, 2}, {{0, 0}, {2, 0}});
    FAIL("expected PhiNotIso");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PhiNotIso);
  }
  try {
    AmalgamSpec::make(c4, c4, {0, 1}, {0, 1}, {{0, 0}, {1, 1}});
    FAIL("expected NotSubgroup");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSubgroup);
  }
  // phi = identity on A3 -> C6 order-3 subgroup needs 1 -> 2 or 1 -> 4; 1 -> 2 and 2 -> 2 is not injective.
  CHECK_THROWS_AS(AmalgamSpec::make(FiniteGroup::dihedral(3), FiniteGroup::cyclic(6), {0, 1, 2}, {0, 2, 4},
                                    {{0, 0}, {1, 2}, {2, 2}}),
                  Error);
}

TEST_CASE("reduce") {
  const auto s = fixture::amalg1();
  auto r = reduce(s, {{H, 1}, {K, 1}});
  CHECK(r.syllables() == Word{{H, 1}, {K, 1}});
  CHECK(r.length() == 2);
  r = reduce(s, {{H, 1}, {H, 1}});
  CHECK(r.syllables() == Word{{H, 2}});
  CHECK(reduce(s, {{H, 1}, {K, 2}, {H, 1}}).empty());
  CHECK(reduce(s, {{K, 2}}).syllables() == Word{{H, 2}});  // amalgamated syllables are tagged H

  CHECK(length(s, {{H, 1}, {K, 1}}) == 2);
  CHECK(length(s, {{H, 2}}) == 1);
  CHECK(length(s, {}) == 0);

  // Reduced-word invariants on every raw word of length <= 4.
  for (const auto& w : oracle::raw_words_up_to(s, 4, false)) {
    const auto rw = reduce(s, w);
    for (std::size_t i = 0; i + 1 < rw.length(); ++i) CHECK(rw[i].factor != rw[i + 1].factor);
    if (rw.length() > 1)
      for (const auto& syl : rw.syllables()) CHECK_FALSE(s.in_amalgam(syl));
    CHECK(oracle::equal_by_rewriting(s, w, rw.syllables()));
  }
}

TEST_CASE("normal form") {
  const auto s = fixture::amalg1();
  auto nf = normal_form(s, {{H, 3}});
  CHECK(nf.amalgam_part == 2);
  CHECK(nf.tail == Word{{H, 1}});
  nf = normal_form(s, {});
  CHECK(nf.amalgam_part == 0);
  CHECK(nf.tail.empty());
  nf = normal_form(s, {{H, 1}, {K, 3}});
  CHECK(nf.amalgam_part == 2);
  CHECK(nf.tail == Word{{H, 1}, {K, 1}});

  // Equality by normal form against equality by rewriting, all words of length <= 2.
  const auto words = oracle::raw_words_up_to(s, 2, false);
  for (const auto& u : words)
    for (const auto& v : words)
      CHECK((normal_form(s, u) == normal_form(s, v)) == oracle::equal_by_rewriting(s, u, v));
}

TEST_CASE("normal form properties on random words") {
  std::mt19937 rng(20240611);
  for (const auto& s : {fixture::amalg1(), fixture::s3_c6(), fixture::free_product(2, 3)}) {
    for (int i = 0; i < 300; ++i) {
      const auto u = oracle::random_word(s, 6, rng);
      const auto v = oracle::random_word(s, 6, rng);
      const auto nu = normal_form(s, u);
      CHECK(normal_form(s, render(nu)) == nu);
      CHECK(normal_form(s, concat(u, v)) == normal_form(s, concat(render(nu), render(normal_form(s, v)))));
      CHECK(length(s, u) == length(s, render(nu)));
      for (const auto& t : nu.tail) CHECK(s.coset_rep(t.factor, t.elem) == t.elem);
    }
  }
}

TEST_CASE("cyclic reduction and permutations") {
  const auto s = fixture::amalg1();
  auto c = cyclically_reduce(s, {{H, 1}, {K, 1}});
  CHECK(c.word.syllables() == Word{{H, 1}, {K, 1}});
  CHECK(c.conjugator.empty());
  c = cyclically_reduce(s, {{H, 2}});
  CHECK(c.word.syllables() == Word{{H, 2}});
  CHECK(c.conjugator.empty());

  const Word w{{H, 1}, {K, 1}, {H, 3}};
  c = cyclically_reduce(s, w);
  CHECK(c.word.length() <= 2);
  CHECK(equal_in_group(s, conjugate_by(s, w, c.conjugator), c.word.syllables()));

  for (const auto& u : oracle::raw_words_up_to(s, 4, false)) {
    const auto cr = cyclically_reduce(s, u);
    CHECK(oracle::equal_by_rewriting(s, conjugate_by(s, u, cr.conjugator), cr.word.syllables()));
    CHECK(is_cyclically_reduced(s, cr.word.syllables()));
  }

  const auto perms = cyclic_permutations(s, {{H, 1}, {K, 1}});
  REQUIRE(perms.size() == 2);
  CHECK(perms[1].syllables() == Word{{K, 1}, {H, 1}});
  CHECK(cyclic_permutations(s, {{H, 1}}).size() == 1);
  CHECK(cyclic_permutations(s, {{H, 1}, {K, 1}, {H, 1}, {K, 3}}).size() == 4);
  try {
    cyclic_permutations(s, w);
    FAIL("expected NotCyclicallyReduced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCyclicallyReduced);
  }
}

TEST_CASE("conjugacy examples") {
  const auto s = fixture::amalg1();
  auto v = is_conjugate_central(s, {{H, 1}, {K, 1}}, {{K, 1}, {H, 1}});
  CHECK(v.conjugate);
  CHECK(v.conjugator == Word{{H, 1}});
  v = is_conjugate_central(s, {{H, 1}}, {{H, 3}});
  CHECK_FALSE(v.conjugate);
  CHECK(is_conjugate_central(s, {{H, 2}}, {{K, 2}}).conjugate);

  const auto fp = fixture::free_product(2, 2);
  CHECK(is_conjugate_general(fp, {{H, 1}, {K, 1}}, {{K, 1}, {H, 1}}).conjugate);
  CHECK_FALSE(is_conjugate_general(fp, {{H, 1}}, {{K, 1}}).conjugate);

  try {
    is_conjugate_central(fixture::s3_c6(), {{H, 1}}, {{H, 2}});
    FAIL("expected NotCentral");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCentral);
  }
}

TEST_CASE("general conjugacy on a non-central amalgam against brute force") {
  const auto s = fixture::s3_c6();
  const auto words = oracle::reduced_words_up_to(s, 2);
  const auto conjugators = oracle::raw_words_up_to(s, 2, true);
  for (std::size_t i = 0; i < words.size(); i += 3)
    for (std::size_t j = 0; j < words.size(); j += 3) {
      const auto v = is_conjugate_general(s, words[i], words[j]);
      if (v.conjugate) {
        CHECK(equal_in_group(s, conjugate_by(s, words[i], v.conjugator), words[j]));
      } else {
        CHECK_FALSE(oracle::brute_conjugator(s, words[i], words[j], conjugators).has_value());
      }
    }
  // r ~ r^2 in S3 and r = phi^-1(2), r^2 = phi^-1(4) in C6; both routes meet in A.
  CHECK(is_conjugate_general(s, {{H, 1}}, {{H, 2}}).conjugate);
  CHECK(is_conjugate_general(s, {{K, 2}}, {{K, 4}}).conjugate);
  CHECK_FALSE(is_conjugate_general(s, {{K, 1}}, {{K, 5}}).conjugate);
}

TEST_CASE("conjugacy invariant under conjugating the inputs") {
  const auto s = fixture::amalg1();
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto x = oracle::random_word(s, 3, rng);
    const auto y = oracle::random_word(s, 3, rng);
    const auto z1 = oracle::random_word(s, 2, rng);
    const auto z2 = oracle::random_word(s, 2, rng);
    const bool base = is_conjugate_central(s, x, y).conjugate;
    CHECK(is_conjugate_central(s, conjugate_by(s, x, z1), conjugate_by(s, y, z2)).conjugate == base);
    CHECK(is_conjugate_general(s, conjugate_by(s, x, z1), conjugate_by(s, y, z2)).conjugate == base);
  }
}

TEST_CASE("word validation") {
  const auto s = fixture::amalg1();
  CHECK(make_word(s, {{H, 0}, {K, 3}}) == Word{{K, 3}});
  try {
    make_word(s, {{H, 9}});
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfRange);
  }
}
