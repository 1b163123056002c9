#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cirq/formula.hpp"
#include "cirq/gbridge.hpp"
#include "cirq/io.hpp"
#include "cirq/php.hpp"
#include "cirq/prover.hpp"
#include "cirq/rules.hpp"
#include "cirq/semantics.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

// Thrown for conditions that map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    cirq::write_file(out_path, text);
}

struct Options {
  std::string input;
  std::string out;
  std::string profile = "cl8";
  std::string format = "dot";
  bool classical = false;
  bool trace = false;
  bool stats = false;
  bool derivation = false;
  bool weak = false;
  std::size_t port_limit = 24;
  std::size_t node_limit = 200000;
  std::size_t g_budget = 200000;
  int php_n = 1;
  int php_max = 5;
  unsigned jobs = 1;
};

cirq::SemanticsOptions semantics(const Options& o) {
  cirq::SemanticsOptions s;
  s.port_budget = o.port_limit;
  s.weak_consistency = o.weak;
  return s;
}

int cmd_parse(const Options& o) {
  cirq::Hyperformula h;
  try {
    h = cirq::parse(o.input);
  } catch (const cirq::SyntaxError& e) {
    std::cout << "syntax-error position=" << e.position() << "\n";
    std::cerr << "cirq: " << e.what() << "\n";
    return kError;
  }
  if (o.classical) h = cirq::underline(cirq::strip_overlines(h));
  emit(o.out, cirq::write_cirquent(cirq::to_cirquent(h)));
  return kOk;
}

int cmd_valid(const Options& o) {
  auto c = cirq::read_cirquent(cirq::read_file(o.input));
  auto v = cirq::decide_validity(c, semantics(o));
  std::cout << cirq::format_witness(v) << "\n";
  if (v.valid()) return kOk;
  for (const auto& f : v.countermodels) std::cout << "countermodel " << cirq::format_assignment(f) << "\n";
  return kNegative;
}

int cmd_prove(const Options& o) {
  auto c = cirq::read_cirquent(cirq::read_file(o.input));
  cirq::ProverOptions po;
  po.semantics = semantics(o);
  po.node_limit = o.node_limit;
  cirq::ProverTrace trace;
  auto r = cirq::prove(c, po, o.trace ? &trace : nullptr);
  if (!r.proof) {
    std::cout << "unprovable " << cirq::format_witness(r.validity) << "\n";
    return kNegative;
  }
  if (o.trace) {
    for (const auto& [name, stage] : trace.stages) std::cout << cirq::write_cirquent(stage, name);
    std::cout << "s " << trace.s << "\n";
    for (const auto& rk : trace.ranks) std::cout << "rank " << rk.str() << "\n";
  }
  emit(o.out, cirq::write_derivation(*r.proof));
  if (!o.out.empty() && o.out != "-") std::cout << "provable steps=" << r.proof->steps.size() << "\n";
  return kOk;
}

int cmd_check(const Options& o) {
  auto d = cirq::read_derivation(cirq::read_file(o.input));
  cirq::Profile p;
  try {
    p = cirq::parse_profile(o.profile);
  } catch (const std::exception&) {
    throw UsageError("unknown profile '" + o.profile + "'");
  }
  auto r = o.derivation ? cirq::check_derivation(d, p) : cirq::check_proof(d, p);
  if (r) {
    std::cout << "ok steps=" << d.steps.size() << " profile=" << cirq::to_string(p) << "\n";
    return kOk;
  }
  std::cout << "check-failed step=" << r.step + 1 << " kind=" << cirq::to_string(r.result.kind)
            << " condition=" << (r.result.condition.empty() ? "-" : r.result.condition) << "\n";
  if (!r.result.detail.empty()) std::cerr << "cirq: " << r.result.detail << "\n";
  return kNegative;
}

int cmd_from_g(const Options& o) {
  auto g = cirq::read_gproof(cirq::read_file(o.input));
  auto gc = cirq::check_g_proof(g);
  if (!gc) {
    std::cout << "g-proof-invalid kind=" << cirq::to_string(gc.kind) << " path=";
    if (gc.path.empty()) std::cout << "root";
    for (std::size_t k = 0; k < gc.path.size(); ++k) std::cout << (k ? "." : "") << gc.path[k];
    std::cout << "\n";
    return kNegative;
  }
  try {
    emit(o.out, cirq::write_derivation(cirq::translate_g_to_cl8(g)));
  } catch (const cirq::GError& e) {
    std::cout << "g-proof-invalid kind=" << cirq::to_string(e.kind()) << "\n";
    return kNegative;
  }
  return kOk;
}

int cmd_php(const Options& o) {
  if (o.php_n < 1) throw UsageError("-n must be at least 1");
  if (o.php_n > o.php_max)
    throw UsageError("n=" + std::to_string(o.php_n) + " exceeds --max-n " + std::to_string(o.php_max));
  auto p = cirq::php_proof(o.php_n);
  emit(o.out, cirq::write_derivation(p.proof));
  if (o.stats) {
    std::size_t widest = 0;
    for (const auto& c : p.proof.cirquents) widest = std::max(widest, c.node_count() + c.edge_count());
    std::cout << "n " << o.php_n << "\nsteps " << p.proof.steps.size() << "\nsize " << p.proof.size()
              << "\nmax_cirquent " << widest << "\n";
  }
  return kOk;
}

int cmd_render(const Options& o) {
  if (o.format != "dot") throw UsageError("unsupported format '" + o.format + "'");
  auto blocks = cirq::read_cirquents(cirq::read_file(o.input));
  std::string text;
  for (const auto& [name, c] : blocks) text += cirq::render_dot(c, name);
  emit(o.out, text);
  return kOk;
}

int cmd_stats(const Options& o) {
  auto d = cirq::read_derivation(cirq::read_file(o.input));
  std::size_t widest = 0;
  for (const auto& c : d.cirquents) widest = std::max(widest, c.node_count() + c.edge_count());
  std::map<std::string, std::size_t> by_rule;
  for (const auto& s : d.steps) ++by_rule[s.rule.str()];
  std::cout << "cirquents " << d.cirquents.size() << "\nsteps " << d.steps.size() << "\nsize " << d.size()
            << "\nmax_cirquent " << widest << "\n";
  for (const auto& [r, k] : by_rule) std::cout << "rule " << r << " " << k << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cirquent calculus toolkit"};
  app.set_version_flag("--version", "cirq 0.1.0");
  app.require_subcommand(1, 1);

  Options o;
  app.add_option("--jobs", o.jobs, "Worker threads (the current engines run on one)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto port_limit = [&](CLI::App* s) {
    s->add_option("--port-limit", o.port_limit, "Exhaustive semantics budget in ports")->capture_default_str();
    s->add_flag("--weak-consistency", o.weak, "Accept assignments giving at least one side of each allocation 1");
  };

  auto* parse = app.add_subcommand("parse", "Compile a (hyper)formula to a cirquent");
  parse->add_option("text", o.input, "Formula text")->required();
  parse->add_flag("--classical", o.classical, "Underline the formula first");
  parse->add_option("-o,--output", o.out, "Output .cirq (default stdout)");

  auto* valid = app.add_subcommand("valid", "Decide validity under resource semantics");
  valid->add_option("input", o.input, ".cirq file")->required();
  port_limit(valid);

  auto* prove = app.add_subcommand("prove", "Produce a CL8 proof");
  prove->add_option("input", o.input, ".cirq file")->required();
  prove->add_option("-o,--output", o.out, "Output .clp (default stdout)");
  prove->add_flag("--trace", o.trace, "Print prover stages and ranks");
  prove->add_option("--node-limit", o.node_limit, "Largest intermediate cirquent")->capture_default_str();
  port_limit(prove);

  auto* check = app.add_subcommand("check", "Check a .clp proof");
  check->add_option("input", o.input, ".clp file")->required();
  check->add_option("--profile", o.profile, "cl8, cl8s, cl8-merge or cl8-local")->capture_default_str();
  check->add_flag("--derivation", o.derivation, "Do not require the first cirquent to be the axiom");

  auto* from_g = app.add_subcommand("from-g", "Translate a G proof into CL8");
  from_g->add_option("input", o.input, ".gpf file")->required();
  from_g->add_option("-o,--output", o.out, "Output .clp (default stdout)");

  auto* php = app.add_subcommand("php", "Generate the pigeonhole proof");
  php->add_option("-n", o.php_n, "Number of holes")->required();
  php->add_option("--max-n", o.php_max, "Refuse larger n")->capture_default_str();
  php->add_option("-o,--output", o.out, "Output .clp (default stdout)");
  php->add_flag("--stats", o.stats, "Print proof size figures");

  auto* render = app.add_subcommand("render", "Render cirquents");
  render->add_option("input", o.input, ".cirq or .clp file")->required();
  render->add_option("--format", o.format, "Only dot")->capture_default_str();
  render->add_option("-o,--output", o.out, "Output file (default stdout)");

  auto* stats = app.add_subcommand("stats", "Size figures of a .clp file");
  stats->add_option("input", o.input, ".clp file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*parse) return cmd_parse(o);
    if (*valid) return cmd_valid(o);
    if (*prove) return cmd_prove(o);
    if (*check) return cmd_check(o);
    if (*from_g) return cmd_from_g(o);
    if (*php) return cmd_php(o);
    if (*render) return cmd_render(o);
    if (*stats) return cmd_stats(o);
  } catch (const cirq::ParseError& e) {
    std::cout << "parse-error line=" << e.line() << "\n";
    std::cerr << "cirq: " << e.what() << "\n";
  } catch (const cirq::SemanticsError& e) {
    std::cout << (e.kind() == cirq::SemanticsError::Kind::BudgetExceeded ? "budget-exceeded" : "error") << "\n";
    std::cerr << "cirq: " << e.what() << "\n";
  } catch (const cirq::ProverError& e) {
    std::cout << (e.kind() == cirq::ProverError::Kind::BudgetExceeded ? "budget-exceeded" : "error") << "\n";
    std::cerr << "cirq: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cout << "error\n";
    std::cerr << "cirq: " << e.what() << "\n";
  }
  return kError;
}
