#include <doctest.h>

#include <cstdlib>

#include "cpsep/io.hpp"
#include "fixtures.hpp"

using namespace cpsep;
using fixture::H;
using fixture::K;

namespace {

const std::filesystem::path data = CPSEP_TEST_DATA;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::NotAGroup;
}

}  // namespace

TEST_CASE("group text round trip") {
  for (const auto& g : {FiniteGroup::cyclic(4), FiniteGroup::dihedral(4), FiniteGroup::dicyclic(2),
                        FiniteGroup::trivial()}) {
    const auto text = io::format_group(g);
    const auto back = io::parse_group(text);
    CHECK(back == g);
    CHECK(io::format_group(back) == text);
  }
  auto named = io::load_group(data / "c4.group");
  CHECK(named.names() == std::vector<std::string>{"e", "a", "a2", "a3"});
  CHECK(named.presentation_note == std::optional<std::string>("<a | a^4>"));
  CHECK(io::parse_group(io::format_group(named)) == named);
  CHECK(io::format_group(FiniteGroup::cyclic(2)) == "order 2\ntable\n0 1\n1 0\n");
}

TEST_CASE("group parse errors") {
  CHECK(kind_of([] { io::parse_group("order 2\ntable\n0 1\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { io::parse_group("order 2\ntable\n0 1\n0 1\n"); }) == ErrorKind::NotAGroup);
  CHECK(kind_of([] { io::parse_group("table\n0\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { io::parse_group("order x\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { io::parse_group("colour 2\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { io::load_group(data / "bad.group"); }) == ErrorKind::NotAGroup);
  CHECK(kind_of([] { io::load_group(data / "missing.group"); }) == ErrorKind::Parse);
  // Comments and blank lines are ignored.
  CHECK(io::parse_group("# c2\n\norder 2 # two\ntable\n0 1\n1 0 # last\n") == FiniteGroup::cyclic(2));
}

TEST_CASE("word literals") {
  const auto s = io::load_amalgam(data / "amalg1.json");
  CHECK(io::parse_word(s, "H:3 K:1 H:2") == Word{{H, 3}, {K, 1}, {H, 2}});
  CHECK(io::parse_word(s, "H:a K:a3").size() == 2);
  CHECK(io::parse_word(s, "H:a K:a3") == Word{{H, 1}, {K, 3}});
  CHECK(io::parse_word(s, "").empty());
  CHECK(io::parse_word(s, "H:0 K:e").empty());
  CHECK(io::format_word(io::parse_word(s, "H:3 K:1")) == "H:3 K:1");
  CHECK(kind_of([&] { io::parse_word(s, "H:9"); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([&] { io::parse_word(s, "X:1"); }) == ErrorKind::Parse);
  CHECK(kind_of([&] { io::parse_word(s, "H1"); }) == ErrorKind::Parse);
  CHECK(kind_of([&] { io::parse_word(s, "H:zz"); }) == ErrorKind::Parse);
}

TEST_CASE("amalgam files") {
  const auto s = io::load_amalgam(data / "amalg1.json");
  CHECK(s.H().order() == 4);
  CHECK(s.is_central());
  const auto back = io::amalgam_from_json(io::amalgam_to_json(s));
  CHECK(back == s);
  CHECK(io::amalgam_to_json(back) == io::amalgam_to_json(s));

  const auto t = io::load_amalgam(data / "s3c6.json");
  CHECK_FALSE(t.is_central());
  CHECK(io::amalgam_from_json(io::amalgam_to_json(t)) == t);

  CHECK(kind_of([] { io::load_amalgam(data / "bad_phi.json"); }) == ErrorKind::PhiNotIso);
  CHECK(kind_of([] { io::amalgam_from_json(io::json::parse(R"({"H": "c2.group"})")); }) == ErrorKind::Parse);
}

TEST_CASE("graph files") {
  const auto gg = io::load_graph(data / "amalg1_graph.json");
  CHECK(gg.graph().edge_count() == 2);
  CHECK(io::graph_from_json(io::graph_to_json(gg)) == gg);
  const auto loop = io::load_graph(data / "loop_graph.json");
  CHECK(loop.graph().edge(0).origin == loop.graph().edge(0).terminus);
  CHECK(kind_of([] { io::load_graph(data / "disconnected_graph.json"); }) == ErrorKind::NotConnected);
  CHECK(kind_of([] { io::load_graph(data / "bad_inverse_graph.json"); }) == ErrorKind::GraphAxiom);
}

TEST_CASE("certificate round trip") {
  const auto s = fixture::amalg1();
  const Word f{{H, 1}}, g{{K, 1}};
  const auto w = search_witness(s, f, g, SearchBudget{});
  const io::Certificate cert{s, 2, f, g, w};
  const auto j = io::certificate_to_json(cert);
  const auto back = io::certificate_from_json(io::json::parse(j.dump()));
  CHECK(back == cert);
  CHECK(io::certificate_to_json(back) == j);
  CHECK(j.at("strategy") == w.strategy);
  CHECK(j.at("f") == "H:1");
  CHECK(check_witness(back.spec, back.witness, back.f, back.g, back.p).ok());
}

TEST_CASE("config files and overrides") {
  auto c = io::load_config(data / "config.json");
  CHECK(c.budget.p == 2);
  CHECK(c.budget.max_target_order == 16);
  CHECK(c.output == io::OutputFormat::text);
  c.output = io::OutputFormat::json;
  c.amalgam_path = "amalg1.json";
  CHECK(io::config_from_json(io::config_to_json(c), data) == c);

  auto j = io::config_to_json(c);
  j["groups"] = {"c4.group"};
  const auto with_extra = io::config_from_json(j, data);
  REQUIRE(with_extra.budget.extra_targets.size() == 1);
  CHECK(with_extra.budget.extra_targets[0].order() == 4);

  CHECK(kind_of([] { io::config_from_json(io::json::parse(R"({"p": 4})")); }) == ErrorKind::NotPrime);
  CHECK(kind_of([] { io::config_from_json(io::json::parse(R"({"max_target_order": 12})")); }) ==
        ErrorKind::NotPPower);
  CHECK(kind_of([] { io::config_from_json(io::json::parse(R"({"colour": 1})")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { io::config_from_json(io::json::parse(R"({"output": "xml"})")); }) == ErrorKind::Parse);

  setenv("CPSEP_MAX_TARGET_ORDER", "8", 1);
  setenv("CPSEP_OUTPUT", "json", 1);
  io::WorkspaceConfig d;
  io::apply_env_overrides(d);
  CHECK(d.budget.max_target_order == 8);
  CHECK(d.output == io::OutputFormat::json);
  setenv("CPSEP_MAX_TARGET_ORDER", "ten", 1);
  CHECK(kind_of([&] { io::apply_env_overrides(d); }) == ErrorKind::Parse);
  unsetenv("CPSEP_MAX_TARGET_ORDER");
  unsetenv("CPSEP_OUTPUT");
}
