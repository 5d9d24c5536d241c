// cpsep: command-line front end.
//
// Exit codes: 0 success, 1 negative verdict, 2 input error, 3 precondition
// (non-central amalgam without --general), 4 conjugate inputs, 5 budget exhausted.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "cpsep/graphgroups.hpp"
#include "cpsep/io.hpp"
#include "cpsep/quotients.hpp"
#include "cpsep/separability.hpp"

using namespace cpsep;
using io::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kPrecondition = 3, kConjugate = 4, kBudget = 5 };

struct Options {
  std::string config_path;
  std::string format;
  std::optional<std::size_t> p;
  std::optional<std::size_t> max_order;
  std::optional<std::size_t> max_index;
};

io::WorkspaceConfig workspace(const Options& opt) {
  io::WorkspaceConfig c;
  if (!opt.config_path.empty()) c = io::load_config(opt.config_path);
  io::apply_env_overrides(c);
  if (opt.p) c.budget.p = *opt.p;
  if (opt.max_order) c.budget.max_target_order = *opt.max_order;
  if (opt.max_index) c.budget.max_quotient_index = *opt.max_index;
  if (opt.format == "json") c.output = io::OutputFormat::json;
  if (opt.format == "text") c.output = io::OutputFormat::text;
  validate_budget(c.budget);
  return c;
}

std::string shown(const Word& w) { return w.empty() ? "(identity)" : io::format_word(w); }

std::string elems_text(const std::vector<Elem>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + "}";
}

void emit(const io::WorkspaceConfig& c, const json& j, const std::string& text) {
  if (c.output == io::OutputFormat::json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_reduce(const Options& opt, const std::string& amalgam, const std::string& literal) {
  const auto c = workspace(opt);
  const auto spec = io::load_amalgam(amalgam);
  const auto w = io::parse_word(spec, literal);
  const auto r = reduce(spec, w);
  const auto nf = normal_form(spec, w);
  std::ostringstream t;
  t << shown(r.syllables()) << " | nf: a=" << nf.amalgam_part << ", tail=[" << io::format_word(nf.tail)
    << "] | length " << r.length() << "\n";
  emit(c,
       json{{"reduced", io::format_word(r.syllables())},
            {"normal_form", {{"a", nf.amalgam_part}, {"tail", io::format_word(nf.tail)}}},
            {"length", r.length()}},
       t.str());
  return kOk;
}

int cmd_conjugate(const Options& opt, const std::string& amalgam, const std::string& a, const std::string& b,
                  bool general) {
  const auto c = workspace(opt);
  const auto spec = io::load_amalgam(amalgam);
  const auto x = io::parse_word(spec, a);
  const auto y = io::parse_word(spec, b);
  const auto v = general ? is_conjugate_general(spec, x, y) : is_conjugate_central(spec, x, y);
  std::ostringstream t;
  json j{{"verdict", v.conjugate ? "CONJUGATE" : "NOT-CONJUGATE"}, {"reason", v.reason}};
  if (v.conjugate) {
    j["conjugator"] = io::format_word(v.conjugator);
    t << "CONJUGATE\nconjugator: " << shown(v.conjugator) << "\n";
  } else {
    json compared = json::array();
    for (const auto& u : v.compared) compared.push_back(io::format_word(u));
    j["compared"] = compared;
    t << "NOT-CONJUGATE\nreason: " << v.reason << "\n";
  }
  emit(c, j, t.str());
  return v.conjugate ? kOk : kNegative;
}

int cmd_pairs(const Options& opt, const std::string& amalgam) {
  const auto c = workspace(opt);
  const auto spec = io::load_amalgam(amalgam);
  const auto pairs = enumerate_compatible_pairs(spec, c.budget.p, c.budget.max_quotient_index);
  std::ostringstream t;
  json list = json::array();
  t << pairs.size() << " compatible pairs\n";
  for (const auto& pr : pairs) {
    const auto qh = pr.quotient_spec.H().order();
    const auto qk = pr.quotient_spec.K().order();
    t << "R=" << elems_text(pr.R.elements()) << " S=" << elems_text(pr.S.elements()) << " |H/R|=" << qh
      << " |K/S|=" << qk << "\n";
    list.push_back(io::pair_to_json(pr));
  }
  emit(c, json{{"count", pairs.size()}, {"pairs", list}}, t.str());
  return kOk;
}

std::vector<Elem> parse_elems(const std::string& csv) {
  std::vector<Elem> out;
  std::istringstream in(csv);
  for (std::string tok; std::getline(in, tok, ',');) {
    if (tok.empty()) continue;
    if (tok.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::Parse, "bad element list '" + csv + "'");
    out.push_back(static_cast<Elem>(std::stoul(tok)));
  }
  return out;
}

int cmd_quotient(const Options& opt, const std::string& amalgam, const std::string& r, const std::string& s) {
  const auto c = workspace(opt);
  const auto spec = io::load_amalgam(amalgam);
  const auto R = Subgroup::from_elements(spec.H(), parse_elems(r));
  const auto S = Subgroup::from_elements(spec.K(), parse_elems(s));
  const auto j = io::pair_to_json(make_compatible_pair(spec, R, S));
  emit(c, j, j.dump(2) + "\n");
  return kOk;
}

json witness_json(const AmalgamSpec& spec, const Witness& w, const Word& f, const Word& g, std::size_t p) {
  return io::certificate_to_json(io::Certificate{spec, p, f, g, w});
}

int cmd_separate(const Options& opt, const std::string& amalgam, const std::string& a, const std::string& b,
                 const std::string& out_path) {
  const auto c = workspace(opt);
  const auto spec = io::load_amalgam(amalgam);
  const auto f = io::parse_word(spec, a);
  const auto g = io::parse_word(spec, b);
  const auto w = search_witness(spec, f, g, c.budget);
  const auto cert = witness_json(spec, w, f, g, c.budget.p);
  if (!out_path.empty()) io::write_text_file(out_path, cert.dump(2) + "\n");

  std::ostringstream t;
  t << "SEPARATED\nstrategy: " << w.strategy << "\ntarget order: " << w.target.order()
    << "\nf image: " << cert["f_image"] << " (class " << cert["f_class_rep"] << ")"
    << "\ng image: " << cert["g_image"] << " (class " << cert["g_class_rep"] << ")\n";
  emit(c, cert, t.str());
  return kOk;
}

int cmd_verify(const Options& opt, const std::string& path) {
  const auto c = workspace(opt);
  const std::filesystem::path file(path);
  const auto cert = io::certificate_from_json(io::read_json_file(file), file.parent_path());
  const auto chk = check_witness(cert.spec, cert.witness, cert.f, cert.g, cert.p);
  std::ostringstream t;
  t << (chk.ok() ? "VALID" : "INVALID") << "\nhomomorphic: " << chk.homomorphic
    << "\nagrees on amalgam: " << chk.agrees_on_amalgam << "\np-group: " << chk.target_is_p_group
    << "\nonto: " << chk.onto << "\nseparates: " << chk.separates << "\n";
  emit(c,
       json{{"valid", chk.ok()},
            {"homomorphic", chk.homomorphic},
            {"agrees_on_amalgam", chk.agrees_on_amalgam},
            {"target_is_p_group", chk.target_is_p_group},
            {"onto", chk.onto},
            {"separates", chk.separates}},
       t.str());
  return chk.ok() ? kOk : kNegative;
}

int cmd_pi1(const Options& opt, const std::string& graph) {
  const auto c = workspace(opt);
  const auto gg = io::load_graph(graph);
  const auto pres = fundamental_presentation(gg);
  json rels = json::array();
  for (const auto& r : pres.relators()) rels.push_back(pres.render(r));
  emit(c, json{{"generators", pres.generators()}, {"relators", rels}}, pres.to_text());
  return kOk;
}

json report_json(const SeparationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"element", io::format_word(e.element)}, {"separated", e.separated}, {"note", e.note}});
  return json{{"entries", entries}, {"failures", r.failures()}, {"all_separated", r.all_separated()}};
}

std::string report_text(const SeparationReport& r) {
  std::ostringstream t;
  for (const auto& e : r.entries)
    t << (e.separated ? "ok   " : "FAIL ") << shown(e.element) << "  " << e.note << "\n";
  t << r.entries.size() << " checked, " << r.failures() << " failed\n";
  return t.str();
}

int cmd_cfp(const Options& opt, const std::string& amalgam, const std::string& literal, std::size_t length) {
  const auto c = workspace(opt);
  const auto spec = io::load_amalgam(amalgam);
  const auto r = is_cfp_separable_bounded(spec, io::parse_word(spec, literal), c.budget, length);
  emit(c, report_json(r), report_text(r));
  return r.all_separated() ? kOk : kBudget;
}

int cmd_residual(const Options& opt, const std::string& amalgam, std::size_t length) {
  const auto c = workspace(opt);
  const auto spec = io::load_amalgam(amalgam);
  const auto r = check_residually_p_bounded(spec, c.budget.p, length, c.budget);
  emit(c, report_json(r), report_text(r));
  return r.all_separated() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computation in amalgamated free products of finite groups"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "JSON workspace config")->check(CLI::ExistingFile);
  app.add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--p", opt.p, "prime");
  app.add_option("--max-order", opt.max_order, "largest target group order (a power of p)");
  app.add_option("--max-index", opt.max_index, "largest index for compatible pairs");

  std::string amalgam, w1, w2, out_path, graph, r_elems, s_elems, cert;
  bool general = false;
  std::size_t length = 2;
  std::function<int()> run;

  auto* reduce_cmd = app.add_subcommand("reduce", "reduced form, normal form and length of a word");
  reduce_cmd->add_option("amalgam", amalgam)->required();
  reduce_cmd->add_option("word", w1)->required();
  reduce_cmd->callback([&] { run = [&] { return cmd_reduce(opt, amalgam, w1); }; });

  auto* conj_cmd = app.add_subcommand("conjugate", "decide conjugacy of two words");
  conj_cmd->add_option("amalgam", amalgam)->required();
  conj_cmd->add_option("x", w1)->required();
  conj_cmd->add_option("y", w2)->required();
  conj_cmd->add_flag("--general", general, "allow non-central amalgams");
  conj_cmd->callback([&] { run = [&] { return cmd_conjugate(opt, amalgam, w1, w2, general); }; });

  auto* pairs_cmd = app.add_subcommand("pairs", "list compatible normal subgroup pairs");
  pairs_cmd->add_option("amalgam", amalgam)->required();
  pairs_cmd->callback([&] { run = [&] { return cmd_pairs(opt, amalgam); }; });

  auto* quot_cmd = app.add_subcommand("quotient", "quotient amalgam for a compatible pair");
  quot_cmd->add_option("amalgam", amalgam)->required();
  quot_cmd->add_option("--R", r_elems, "comma-separated elements of R")->required();
  quot_cmd->add_option("--S", s_elems, "comma-separated elements of S")->required();
  quot_cmd->callback([&] { run = [&] { return cmd_quotient(opt, amalgam, r_elems, s_elems); }; });

  auto* sep_cmd = app.add_subcommand("separate", "find a p-group witness that f and g are not conjugate");
  sep_cmd->add_option("amalgam", amalgam)->required();
  sep_cmd->add_option("f", w1)->required();
  sep_cmd->add_option("g", w2)->required();
  sep_cmd->add_option("-o,--output", out_path, "certificate file");
  sep_cmd->callback([&] { run = [&] { return cmd_separate(opt, amalgam, w1, w2, out_path); }; });

  auto* verify_cmd = app.add_subcommand("verify", "re-check a witness certificate");
  verify_cmd->add_option("certificate", cert)->required();
  verify_cmd->callback([&] { run = [&] { return cmd_verify(opt, cert); }; });

  auto* pi1_cmd = app.add_subcommand("pi1", "presentation of the fundamental group of a graph of groups");
  pi1_cmd->add_option("graph", graph)->required();
  pi1_cmd->callback([&] { run = [&] { return cmd_pi1(opt, graph); }; });

  auto* cfp_cmd = app.add_subcommand("cfp", "bounded conjugacy separability check for one element");
  cfp_cmd->add_option("amalgam", amalgam)->required();
  cfp_cmd->add_option("g", w1)->required();
  cfp_cmd->add_option("--length", length, "largest length checked");
  cfp_cmd->callback([&] { run = [&] { return cmd_cfp(opt, amalgam, w1, length); }; });

  auto* res_cmd = app.add_subcommand("residual", "bounded residual p-finiteness check");
  res_cmd->add_option("amalgam", amalgam)->required();
  res_cmd->add_option("--length", length, "largest length checked");
  res_cmd->callback([&] { run = [&] { return cmd_residual(opt, amalgam, length); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    return run();
  } catch (const ElementsConjugate& e) {
    std::cout << "CONJUGATE\nconjugator: " << shown(e.conjugator()) << "\n";
    return kConjugate;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::NotCentral: return kPrecondition;
      case ErrorKind::BudgetExhausted: return kBudget;
      default: return kInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInput;
  }
}
