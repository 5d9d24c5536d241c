// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <string>

#include "cpsep/graphgroups.hpp"
#include "cpsep/quotients.hpp"
#include "cpsep/separability.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cpsep;
using fixture::H;
using fixture::K;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

bool same_table(const FiniteGroup& a, const FiniteGroup& b) { return a.order() == b.order() && a.rows() == b.rows(); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> brute_pairs(const AmalgamSpec& s, std::size_t p,
                                                                          std::size_t max_index) {
  std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> out;
  auto p_index = [&](std::size_t order, std::size_t size) {
    std::size_t idx = order / size;
    if (idx > max_index) return false;
    while (idx % p == 0) idx /= p;
    return idx == 1;
  };
  for (const auto& r : oracle::all_normal_subgroups(s.H()))
    for (const auto& t : oracle::all_normal_subgroups(s.K())) {
      if (!p_index(s.H().order(), r.size()) || !p_index(s.K().order(), t.size())) continue;
      std::vector<Elem> lhs, rhs;
      for (Elem a : s.A().elements())
        if (std::binary_search(r.begin(), r.end(), a)) lhs.push_back(s.phi(a));
      for (Elem b : s.B().elements())
        if (std::binary_search(t.begin(), t.end(), b)) rhs.push_back(b);
      std::sort(lhs.begin(), lhs.end());
      if (lhs == rhs) out.push_back({r, t});
    }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome normal_form_soundness() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto s = fixture::amalg1();
  std::size_t pairs = 0;
  const auto words = oracle::raw_words_up_to(s, 3, false);
  for (const auto& u : words)
    for (const auto& v : words) {
      ++pairs;
      const bool nf = normal_form(s, u) == normal_form(s, v);
      o.require(nf == oracle::equal_by_rewriting(s, u, v), "disagreement at length <= 3");
    }
  std::mt19937 rng(1);
  const Word trivial{{H, 2}, {K, 2}};
  for (int i = 0; i < 1000; ++i) {
    const auto u = oracle::random_word(s, 6, rng);
    // every other pair is equal in G by construction
    const auto v = i % 2 ? oracle::random_word(s, 6, rng) : concat(concat(u, trivial), Word{});
    o.require((normal_form(s, u) == normal_form(s, v)) == oracle::equal_by_rewriting(s, u, v),
              "disagreement on random pair");
    ++pairs;
  }
  const double secs = seconds_since(t0);
  o.require(secs < 60, "too slow");
  o.detail = std::to_string(pairs) + " pairs, " + std::to_string(secs) + " s" + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome central_vs_brute_force() {
  Outcome o;
  std::size_t compared = 0, conjugate = 0;
  for (const auto& s : {fixture::amalg1(), fixture::free_product(2, 2)}) {
    const auto words = oracle::raw_words_up_to(s, 3, true);
    const auto conjugators = oracle::raw_words_up_to(s, 4, true);
    for (const auto& x : words)
      for (const auto& y : words) {
        const auto v = is_conjugate_central(s, x, y);
        const bool brute = oracle::brute_conjugator(s, x, y, conjugators).has_value();
        ++compared;
        o.require(v.conjugate == brute, "verdict differs from brute force");
        if (v.conjugate) {
          ++conjugate;
          o.require(normal_form(s, conjugate_by(s, x, v.conjugator)) == normal_form(s, y), "conjugator fails");
        }
      }
  }
  const std::string d = std::to_string(compared) + " pairs, " + std::to_string(conjugate) + " conjugate";
  o.detail = o.pass ? d : d + "; " + o.detail;
  return o;
}

Outcome general_vs_central() {
  Outcome o;
  std::size_t compared = 0;
  {
    const auto s = fixture::amalg1();
    const auto words = oracle::raw_words_up_to(s, 3, true);
    for (const auto& x : words)
      for (const auto& y : words) {
        ++compared;
        o.require(is_conjugate_general(s, x, y).conjugate == is_conjugate_central(s, x, y).conjugate,
                  "general and central differ on AMALG1");
      }
  }
  {
    const auto s = fixture::free_product(2, 2);
    const oracle::FreeProduct fp{s.H(), s.K()};
    const auto words = oracle::raw_words_up_to(s, 3, false);
    for (const auto& x : words)
      for (const auto& y : words) {
        ++compared;
        o.require(is_conjugate_general(s, x, y).conjugate == fp.conjugate(x, y),
                  "general differs from the free-product oracle");
      }
  }
  o.detail = std::to_string(compared) + " pairs" + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome compatibility_machinery() {
  Outcome o;
  const auto s = fixture::amalg1();
  const auto pairs = enumerate_compatible_pairs(s, 2, 4);
  std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> got;
  for (const auto& p : pairs) got.push_back({p.R.elements(), p.S.elements()});
  std::sort(got.begin(), got.end());
  const auto expected = brute_pairs(s, 2, 4);
  o.require(got == expected, "enumeration differs from the brute-force filter");

  std::size_t refined = 0;
  for (const auto& M : enumerate_normal_subgroups(s.H()))
    for (const auto& N : enumerate_normal_subgroups(s.K())) {
      std::vector<Elem> u, v;
      for (Elem a : s.A().elements())
        if (M.contains(a) && N.contains(s.phi(a))) u.push_back(a);
      for (Elem a : u) v.push_back(s.phi(a));
      std::sort(v.begin(), v.end());
      std::optional<CompatiblePair> found;
      try {
        found = refine_to_compatible(s, M, N, 2);
      } catch (const Error& e) {
        o.require(e.kind() == ErrorKind::NoRefinementFound, "unexpected error from refinement");
        continue;
      }
      const auto& pr = *found;
      o.require(pr.R.is_subset_of(M) && pr.S.is_subset_of(N), "refinement not below (M, N)");
      o.require(intersect(pr.R, s.A()).elements() == u && intersect(pr.S, s.B()).elements() == v,
                "refinement has the wrong intersections");
      o.require(is_compatible(s, pr.R, pr.S), "refinement not compatible");
      ++refined;
    }

  std::mt19937 rng(4);
  std::size_t law = 0;
  for (const auto& pr : pairs)
    for (int i = 0; i < 500; ++i) {
      const auto a = oracle::random_word(s, 6, rng);
      const auto b = oracle::random_word(s, 6, rng);
      const auto lhs = project_word(pr, concat(a, b)).syllables();
      const auto rhs = concat(project_word(pr, a).syllables(), project_word(pr, b).syllables());
      o.require(normal_form(pr.quotient_spec, lhs) == normal_form(pr.quotient_spec, rhs), "rho is not a homomorphism");
      ++law;
    }
  std::string d = std::to_string(got.size()) + " pairs, equal to the brute-force filter; " +
                  std::to_string(refined) + " refinements, " + std::to_string(law) + " law checks";
  o.detail = o.pass ? d : d + "; " + o.detail;
  return o;
}

Outcome graph_round_trip() {
  Outcome o;
  const auto s = fixture::amalg1();
  const auto a = fundamental_presentation(amalgam_as_group_graph(s));
  const auto b = amalgam_presentation(s);
  auto multiset = [](const Presentation& p) {
    std::multiset<std::string> out;
    for (const auto& r : p.relators()) out.insert(p.render(r));
    return out;
  };
  o.require(std::multiset<std::string>(a.generators().begin(), a.generators().end()) ==
                std::multiset<std::string>(b.generators().begin(), b.generators().end()),
            "generator sets differ");
  o.require(multiset(a) == multiset(b), "relator multisets differ");

  const auto killed = kill_subgroups(a, {s.A(), s.B()});
  const auto d = collapse_to_direct_product(killed.presentation);
  const auto pair = make_compatible_pair(s, s.A(), s.B());
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto w = oracle::random_word(s, 8, rng);
    Elem via_kill = 0, via_project = 0;
    for (const auto& syl : w) {
      const std::size_t v = syl.factor == H ? 0 : 1;
      via_kill = d.group.mul(via_kill, d.vertex_images[v][killed.vertex_projections[v](syl.elem)]);
    }
    const auto projected = project_word(pair, w);
    for (const auto& syl : projected.syllables())
      via_project = d.group.mul(via_project, d.vertex_images[syl.factor == H ? 0 : 1][syl.elem]);
    o.require(via_kill == via_project, "collapse and projection disagree");
  }
  const std::string det = std::to_string(a.generators().size()) + " generators, " +
                          std::to_string(a.relators().size()) + " relators, 200 words";
  o.detail = o.pass ? det : det + "; " + o.detail;
  return o;
}

Outcome witness_engine() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto s = fixture::amalg1();
  SearchBudget budget;
  const auto catalog = p_group_catalog(2, 16);
  std::vector<Word> words;
  for (const auto& w : oracle::reduced_words_up_to(s, 2))
    if (is_cyclically_reduced(s, w)) words.push_back(w);

  std::size_t separated = 0, conjugate = 0;
  for (const auto& f : words)
    for (const auto& g : words) {
      if (is_conjugate_central(s, f, g).conjugate) {
        ++conjugate;
        continue;
      }
      try {
        const auto w = search_witness(s, f, g, budget);
        // Independent re-check: agreement on A and distinct classes by brute force.
        bool agree = true;
        for (Elem a : s.A().elements()) agree = agree && w.psi_H(a) == w.psi_K(s.phi(a));
        const Elem fi = word_image(w, f), gi = word_image(w, g);
        o.require(agree && !oracle::conjugate_in(w.target, fi, gi), "returned witness fails re-verification");
        o.require(is_p_group(w.target, 2) && w.target.order() <= 16, "target outside the budget");
        ++separated;
      } catch (const Error& e) {
        o.require(false, std::string("no witness: ") + e.what());
      }
    }

  // The worked example: C4 with psi_K = 3i appears among the valid direct
  // witnesses, and what search_witness returns is no later in catalog order.
  const Word f{{H, 1}}, g{{K, 1}};
  const auto c4 = FiniteGroup::cyclic(4);
  const auto psi_k = GroupHom::make(c4, c4, {0, 3, 2, 1});
  const auto all = enumerate_direct_witnesses(s, f, g, catalog);
  const auto it = std::find_if(all.begin(), all.end(), [&](const Witness& w) {
    return same_table(w.target, c4) && w.psi_H == GroupHom::identity(c4) && w.psi_K == psi_k;
  });
  o.require(it != all.end(), "C4 witness with psi_K = 3i not among valid outputs");
  const auto returned = search_witness(s, f, g, budget);
  auto position = [&](const FiniteGroup& t) {
    return std::find_if(catalog.begin(), catalog.end(), [&](const FiniteGroup& c) { return same_table(c, t); }) -
           catalog.begin();
  };
  o.require(position(returned.target) <= position(c4), "returned witness is later in canonical order");

  const double secs = seconds_since(t0);
  o.require(secs < 300, "too slow");
  const std::string d = std::to_string(separated) + " separated, " + std::to_string(conjugate) +
                        " conjugate pairs skipped, example witness present (returned: order " +
                        std::to_string(returned.target.order()) + ", " + returned.strategy + "), " +
                        std::to_string(secs) + " s";
  o.detail = o.pass ? d : d + "; " + o.detail;
  return o;
}

Outcome negative_control() {
  Outcome o;
  const auto s = fixture::free_product(2, 3);
  SearchBudget budget;
  const auto report = check_residually_p_bounded(s, 2, 1, budget);
  bool obstruction = false;
  for (const auto& e : report.entries)
    if (!e.separated && e.element.size() == 1 && e.element[0].factor == K) obstruction = true;
  o.require(obstruction, "order-3 elements not reported");

  // Exhaustive: for each pair, does any hom pair into a catalog group separate?
  const auto catalog = p_group_catalog(2, 16);
  std::vector<std::vector<std::vector<Elem>>> homs_h, homs_k;
  for (const auto& t : catalog) {
    homs_h.push_back(oracle::all_homs(s.H(), t));
    homs_k.push_back(oracle::all_homs(s.K(), t));
  }
  auto image = [&](const FiniteGroup& t, const std::vector<Elem>& ph, const std::vector<Elem>& pk, const Word& w) {
    Elem acc = 0;
    for (const auto& syl : w) acc = t.mul(acc, syl.factor == H ? ph[syl.elem] : pk[syl.elem]);
    return acc;
  };
  const auto words = oracle::reduced_words_up_to(s, 2);
  std::size_t exhausted = 0, found = 0;
  for (const auto& f : words)
    for (const auto& g : words) {
      if (is_conjugate_general(s, f, g).conjugate) continue;
      bool separable = false;
      for (std::size_t t = 0; t < catalog.size() && !separable; ++t)
        for (const auto& ph : homs_h[t])
          for (const auto& pk : homs_k[t])
            if (!oracle::conjugate_in(catalog[t], image(catalog[t], ph, pk, f), image(catalog[t], ph, pk, g)))
              separable = true;
      try {
        search_witness(s, f, g, budget);
        o.require(separable, "witness found where none exists");
        ++found;
      } catch (const Error& e) {
        o.require(e.kind() == ErrorKind::BudgetExhausted, "unexpected error");
        o.require(!separable, "BudgetExhausted although a separating pair exists");
        ++exhausted;
      }
    }
  o.require(exhausted > 0, "no BudgetExhausted case exercised");
  const std::string d = std::to_string(report.failures()) + " residual failures, " + std::to_string(exhausted) +
                        " BudgetExhausted (all confirmed), " + std::to_string(found) + " separated";
  o.detail = o.pass ? d : d + "; " + o.detail;
  return o;
}

Outcome residual_implies_separation() {
  Outcome o;
  const auto s = fixture::amalg1();
  SearchBudget budget;
  const auto report = check_residually_p_bounded(s, 2, 4, budget);
  o.require(report.all_separated(), "AMALG1 not residually 2 up to length 4");

  const auto elems = elements_up_to_length(s, 2);
  std::mt19937 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  std::size_t sampled = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& f = elems[pick(rng)];
    const auto& g = elems[pick(rng)];
    if (is_conjugate_central(s, f, g).conjugate) continue;
    ++sampled;
    try {
      const auto w = search_witness(s, f, g, budget);
      o.require(check_witness(s, w, f, g, 2).ok(), "witness fails");
    } catch (const Error& e) {
      o.require(false, std::string("pair not separated: ") + e.what());
    }
  }
  const std::string d = std::to_string(report.entries.size()) + " elements residually checked, " +
                        std::to_string(sampled) + " sampled pairs separated";
  o.detail = o.pass ? d : d + "; " + o.detail;
  return o;
}

}  // namespace

int main() {
  struct Row {
    const char* name;
    Outcome (*run)();
  };
  const Row rows[] = {
      {"1 normal-form soundness", normal_form_soundness},
      {"2 central conjugacy vs brute force", central_vs_brute_force},
      {"3 general vs central / free-product oracle", general_vs_central},
      {"4 compatibility machinery", compatibility_machinery},
      {"5 graph-of-groups round trip", graph_round_trip},
      {"6 witness engine", witness_engine},
      {"7 negative control", negative_control},
      {"8 bounded residual-p vs separation", residual_implies_separation},
  };
  int failed = 0;
  for (const auto& r : rows) {
    Outcome o;
    try {
      o = r.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %s: %s\n", o.pass ? "PASS" : "FAIL", r.name, o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
