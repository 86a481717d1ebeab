#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "ctlstar2ltl/cli.hpp"

using namespace ctlstar2ltl;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("ctlstar2ltl");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("CTLSTAR2LTL_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  RunConfig cfg;
  std::string k_text;

  CLI::App app{"CTL* synthesis through LTL reduction"};
  app.require_subcommand(1);

  auto add_k = [&](CLI::App* sub) {
    sub->add_option("--k", k_text, "witness bound: auto, sweep or a positive integer");
    sub->add_flag("--inline-universal", cfg.inline_universal, "inline top-level A subformulas");
  };
  auto add_synth = [&](CLI::App* sub) {
    sub->add_option("--max-counter", cfg.max_counter, "largest counter bound tried")->check(CLI::Range(1U, 100U));
    sub->add_option("--max-positions", cfg.max_positions, "game positions before giving up");
  };

  auto* convert = app.add_subcommand("convert", "reduce a CTL* spec to LTL");
  convert->add_option("spec", cfg.spec_path)->required();
  add_k(convert);
  convert->add_flag("--readable", cfg.readable, "keep witness atoms instead of bits");
  convert->add_option("--out", cfg.out_path);

  auto* synth = app.add_subcommand("synth", "synthesize a Moore machine for a CTL* spec");
  synth->add_option("spec", cfg.spec_path)->required();
  add_k(synth);
  add_synth(synth);
  synth->add_option("--out", cfg.out_path, "machine file; also writes <out>.projected and <out>.check");
  synth->add_option("--dot", cfg.dot_path, "graphviz file of the projected machine");

  auto* check = app.add_subcommand("check", "model check a machine");
  check->add_option("machine", cfg.machine_path)->required();
  check->add_option("spec", cfg.spec_path)->required();
  check->add_flag("--ltl", cfg.ltl_mode, "read the spec as LTL");

  auto* dual = app.add_subcommand("dualize", "emit the dual spec of the reduced formula");
  dual->add_option("spec", cfg.spec_path)->required();
  add_k(dual);
  add_synth(dual);
  dual->add_flag("--solve", cfg.solve, "synthesize the dual (environment) machine");
  dual->add_option("--out", cfg.out_path);

  auto* oracle = app.add_subcommand("oracle", "compare brute-force CTL* and reduced-LTL realisability");
  add_synth(oracle);
  oracle->add_option("--seed", cfg.seed);
  oracle->add_option("--count", cfg.count, "corpus size");
  oracle->add_option("--depth", cfg.depth)->check(CLI::Range(1U, 4U));
  oracle->add_option("--corpus", cfg.corpus_dir, "extra spec files with one input and one output");
  oracle->add_option("--out", cfg.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code::kInput;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (!k_text.empty()) {
    try {
      cfg.k = parse_k(k_text);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_code::kInput;
    }
  }
  return run_command(cfg, std::cout, std::cerr);
}
