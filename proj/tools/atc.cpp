// Command-line front end: validate, models, big-model, modular, entail,
// contract, revise, postulates, export-dot.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "atc/boolean.hpp"
#include "atc/contract_sem.hpp"
#include "atc/contract_syn.hpp"
#include "atc/entail.hpp"
#include "atc/kripke.hpp"
#include "atc/postulates.hpp"
#include "atc/revise.hpp"
#include "atc/syntax.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitPrecondition = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw atc::ArgumentError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

atc::ParseResult load_theory(const std::string& path) {
  atc::ParseResult pr = atc::parse_theory(slurp(path));
  for (const auto& w : pr.warnings) std::cerr << "warning: " << w << "\n";
  return pr;
}

atc::Metric metric_from(const std::string& name) {
  if (name == "inclusion") return atc::Metric::Inclusion;
  if (name == "cardinality") return atc::Metric::Cardinality;
  throw atc::ArgumentError("unknown metric: " + name);
}

void write_or_print(const std::string& out_dir, const std::string& name,
                    const std::string& content) {
  if (out_dir.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::create_directories(out_dir);
  std::ofstream out(std::filesystem::path(out_dir) / name);
  out << content;
}

int run(int argc, char** argv) {
  CLI::App app{"action theory change toolkit"};
  app.require_subcommand(1);

  std::string file, law_text, metric_name = "inclusion", out_dir;
  bool semantic = false, dot = false, allow_non_modular = false;
  int fuzz_n = 0;
  uint64_t seed = 1;

  auto add_common = [&](CLI::App* cmd, bool with_law) {
    cmd->add_option("file", file, "theory file")->required();
    if (with_law) cmd->add_option("--law", law_text, "law to process");
    return cmd;
  };

  auto* c_validate = add_common(app.add_subcommand("validate",
      "parse a theory file and report its shape"), false);
  auto* c_models = add_common(app.add_subcommand("models",
      "list the possible states (valuations of the static laws)"), false);
  auto* c_big = add_common(app.add_subcommand("big-model",
      "print the big model"), false);
  c_big->add_flag("--dot", dot, "emit Graphviz instead of model text");
  auto* c_modular = add_common(app.add_subcommand("modular",
      "check modularity; exit 1 when implicit static laws exist"), false);
  auto* c_entail = add_common(app.add_subcommand("entail",
      "decide whether the theory entails a law; exit 1 when it does not"),
      true);
  c_entail->get_option("--law")->required();
  auto* c_contract = add_common(app.add_subcommand("contract",
      "contract a law from the theory"), true);
  c_contract->get_option("--law")->required();
  c_contract->add_flag("--semantic", semantic,
                       "contract the big model set instead of the laws");
  c_contract->add_option("--metric", metric_name,
                         "closeness metric: inclusion|cardinality");
  c_contract->add_option("--out-dir", out_dir,
                         "write numbered candidates into this directory");
  c_contract->add_flag("--allow-non-modular", allow_non_modular,
                       "run the algorithms on a non-modular theory");
  auto* c_revise = add_common(app.add_subcommand("revise",
      "revise the big model set by a new law"), true);
  c_revise->get_option("--law")->required();
  c_revise->add_option("--metric", metric_name,
                       "closeness metric: inclusion|cardinality");
  c_revise->add_flag("--dot", dot, "emit Graphviz instead of model text");
  auto* c_post = add_common(app.add_subcommand("postulates",
      "check postulates for one law or fuzz a corpus (JSON lines)"), true);
  c_post->add_option("--fuzz", fuzz_n, "number of generated theories");
  c_post->add_option("--seed", seed, "generator seed");
  auto* c_dot = add_common(app.add_subcommand("export-dot",
      "emit Graphviz for a theory's big model or for a model text file"),
      false);
  bool as_model = false;
  c_dot->add_flag("--model", as_model, "treat the file as model text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (c_validate->parsed()) {
    atc::ParseResult pr = load_theory(file);
    const auto& th = pr.theory;
    std::cout << "atoms: " << th.universe.num_atoms()
              << ", actions: " << th.universe.num_actions()
              << ", static: " << th.statics.size()
              << ", effect: " << th.effects.size()
              << ", executability: " << th.execs.size() << "\n";
    std::cout << atc::render(th);
    return 0;
  }

  if (c_models->parsed()) {
    const auto th = load_theory(file).theory;
    for (uint32_t v :
         atc::valuations_of(th.statics_conj(), th.universe))
      std::cout << atc::world_label(v, th.universe) << "\n";
    return 0;
  }

  if (c_big->parsed()) {
    const auto th = load_theory(file).theory;
    atc::KripkeModel big = atc::big_model(th);
    std::cout << (dot ? atc::export_dot(big) : atc::to_text(big));
    return 0;
  }

  if (c_modular->parsed()) {
    const auto th = load_theory(file).theory;
    atc::ModularityReport report = atc::is_modular(th);
    if (report.modular) {
      std::cout << "modular\n";
      return 0;
    }
    std::cout << "non-modular\n";
    for (const auto& [w, law] : report.failing_worlds)
      std::cout << "world " << atc::world_label(w, th.universe)
                << " breaks " << atc::render(law, th.universe) << "\n";
    std::cout << "implicit static law: "
              << atc::render(report.summary, th.universe) << "\n";
    return 1;
  }

  if (c_entail->parsed()) {
    auto th = load_theory(file).theory;
    atc::Law law = atc::parse_law(law_text, th.universe);
    bool yes = atc::entails(th, law);
    std::cout << (yes ? "true" : "false") << "\n";
    return yes ? 0 : 1;
  }

  if (c_contract->parsed()) {
    auto th = load_theory(file).theory;
    atc::Law law = atc::parse_law(law_text, th.universe);
    atc::Metric metric = metric_from(metric_name);
    if (semantic) {
      atc::ModelSet mset;
      mset.insert(atc::big_model(th));
      atc::ContractionOutcome out =
          atc::contract_model_set(mset, law, metric);
      std::cout << out.model_sets.size() << " model set(s)\n";
      for (size_t i = 0; i < out.model_sets.size(); ++i) {
        std::ostringstream os;
        os << "# model set " << i << "\n" << atc::to_text(out.model_sets[i]);
        write_or_print(out_dir, "modelset" + std::to_string(i) + ".txt",
                       os.str());
      }
      return 0;
    }
    atc::ContractOptions opts;
    opts.allow_non_modular = allow_non_modular;
    atc::TheoryFamily family = atc::contract(th, law, opts);
    std::cout << family.theories.size() << " candidate theory(ies)\n";
    for (size_t i = 0; i < family.theories.size(); ++i) {
      std::ostringstream os;
      os << "# candidate " << i << "\n" << atc::render(family.theories[i]);
      write_or_print(out_dir, "candidate" + std::to_string(i) + ".th",
                     os.str());
    }
    return 0;
  }

  if (c_revise->parsed()) {
    auto th = load_theory(file).theory;
    atc::Law law = atc::parse_law(law_text, th.universe);
    atc::Metric metric = metric_from(metric_name);
    atc::ModelSet mset;
    mset.insert(atc::big_model(th));
    atc::RevisionOutcome out = atc::revise_model_set(mset, law, metric);
    std::cout << (dot ? atc::export_dot(out.models)
                      : atc::to_text(out.models));
    return 0;
  }

  if (c_post->parsed()) {
    auto th = load_theory(file).theory;
    nlohmann::ordered_json line;
    if (fuzz_n > 0) {
      atc::FuzzConfig config;
      config.count = fuzz_n;
      config.seed = seed;
      atc::FuzzSummary summary = atc::fuzz_postulates(config);
      for (const auto& c : summary.reports) {
        line = {{"theory", c.theory_id},
                {"law", c.law_text},
                {"postulate", atc::postulate_name(c.postulate)},
                {"holds", c.holds}};
        if (!c.applicable) line["applicable"] = false;
        if (!c.witness.empty()) line["witness"] = c.witness;
        std::cout << line.dump() << "\n";
      }
      std::cerr << summary.failures << " failure(s) over " << summary.cases
                << " case(s)\n";
      return summary.failures == 0 ? 0 : 1;
    }
    if (law_text.empty())
      throw atc::ArgumentError("postulates needs --law or --fuzz N");
    atc::Law law = atc::parse_law(law_text, th.universe);
    int failures = 0;
    for (atc::Postulate p :
         {atc::Postulate::Monotonicity, atc::Postulate::Preservation,
          atc::Postulate::Success, atc::Postulate::Recovery,
          atc::Postulate::ModularityPreservation}) {
      atc::PostulateReport r = atc::check_postulate(th, law, p);
      line = {{"theory", 0},
              {"law", law_text},
              {"postulate", atc::postulate_name(p)},
              {"holds", r.holds}};
      if (!r.applicable) line["applicable"] = false;
      if (!r.witness.empty()) line["witness"] = r.witness;
      std::cout << line.dump() << "\n";
      if (!r.holds) ++failures;
    }
    return failures == 0 ? 0 : 1;
  }

  if (c_dot->parsed()) {
    if (as_model) {
      atc::KripkeModel m = atc::parse_model_text(slurp(file));
      std::cout << atc::export_dot(m);
    } else {
      const auto th = load_theory(file).theory;
      std::cout << atc::export_dot(atc::big_model(th));
    }
    return 0;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const atc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const atc::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const atc::PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const atc::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
