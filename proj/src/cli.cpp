#include "entnf/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "entnf/io.hpp"
#include "entnf/lu_nf.hpp"
#include "entnf/monotones.hpp"
#include "entnf/random.hpp"
#include "entnf/slocc.hpp"
#include "entnf/states.hpp"

namespace entnf::cli {

namespace {

using io::json;

struct Options {
  std::vector<std::string> inputs;
  std::string output;
  bool strict = false;
  std::optional<std::uint64_t> seed;
  std::string profile;

  // normal-form / optimal-filter
  double eps_id = 1e-9;
  std::size_t max_iters = 10000;
  double zero_threshold = 1e-12;
  double numerical_zero = 1e-6;
  double filter_norm_cap = 1e8;
  std::string gauge = "raw";

  // monotones
  std::string monotone_id;
  std::string spec_path;
  std::size_t trials = 100;
  bool unitary = false;

  // lu
  std::size_t level_cap = 10000;
  bool no_phase = false;
  std::size_t restarts = 8;

  // states
  std::string state_name;
  std::size_t parties = 3;
  double a = 1.0;
  bool unnormalized = false;
};

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return read_all(in);
  std::ifstream f(path);
  if (!f) throw Error("io_error", "cannot open '" + path + "'");
  return read_all(f);
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Tolerances tolerances(const Options& o) {
  std::string name = o.profile;
  if (name.empty()) {
    const char* env = std::getenv("ENTNF_TOLERANCE_PROFILE");
    name = env ? env : "default";
  }
  return Tolerances::profile(name);
}

struct Loaded {
  io::State state;
  std::string hash;
};

Loaded load(const std::string& path, std::istream& in, const Tolerances& tol) {
  const std::string text = read_source(path, in);
  return {io::parse_state_text(text, tol), io::content_hash(text)};
}

MultiTensor pure(const Loaded& l) {
  if (const auto* psi = std::get_if<MultiTensor>(&l.state)) return *psi;
  throw Error("expected_pure_state", "this command needs a pure tensor, not a density operator");
}

monotones::MonotoneSpec monotone_spec(const Options& o, std::istream& in) {
  if (!o.spec_path.empty()) {
    const std::string text = read_source(o.spec_path, in);
    try {
      return io::spec_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw Error("parse_error", std::string("malformed monotone spec: ") + e.what());
    }
  }
  if (o.monotone_id.empty())
    throw Error("missing_monotone", "pass --id <catalog id> or --spec <file>");
  return monotones::find(o.monotone_id);
}

slocc::SloccConfig slocc_config(const Options& o, const Tolerances& tol) {
  slocc::SloccConfig cfg;
  cfg.eps_id = o.eps_id;
  cfg.max_iters = o.max_iters;
  cfg.zero_threshold = o.zero_threshold;
  cfg.numerical_zero = o.numerical_zero;
  cfg.filter_norm_cap = o.filter_norm_cap;
  cfg.gauge = slocc::parse_gauge(o.gauge);
  cfg.tol = tol;
  cfg.validate();
  return cfg;
}

std::uint64_t seed_of(const Options& o) { return o.seed ? *o.seed : generate_seed(); }

void add_common(CLI::App* sub, Options& o, bool two_inputs = false) {
  if (two_inputs) {
    sub->add_option("inputs", o.inputs, "two tensor JSON files ('-' for stdin)")
        ->expected(2)
        ->required();
  } else {
    sub->add_option("input", o.inputs, "tensor JSON file, '-' for stdin")->expected(0, 1);
  }
  sub->add_option("-o,--output", o.output, "write the JSON result here");
  sub->add_flag("--strict", o.strict, "exit 3 on non-converged status");
  sub->add_option("--tolerance-profile", o.profile, "default | strict | loose");
}

void add_slocc(CLI::App* sub, Options& o) {
  sub->add_option("--eps-id", o.eps_id, "identity-closeness tolerance");
  sub->add_option("--max-iters", o.max_iters, "sweep cap");
  sub->add_option("--zero-threshold", o.zero_threshold, "relative trace declaring divergence");
  sub->add_option("--numerical-zero", o.numerical_zero, "settled relative trace treated as zero");
  sub->add_option("--filter-norm-cap", o.filter_norm_cap, "filter norm declaring divergence");
  sub->add_option("--gauge", o.gauge, "raw | hermitian");
}

void add_monotone(CLI::App* sub, Options& o) {
  sub->add_option("--id", o.monotone_id, "catalog monotone id");
  sub->add_option("--spec", o.spec_path, "monotone spec JSON file");
}

int emit(const json& doc, const Options& o, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output);
    if (!f) throw Error("io_error", "cannot write '" + o.output + "'");
    f << text;
  }
  return ok;
}

int execute(const std::string& command, const Options& o, std::istream& in, std::ostream& out) {
  const Tolerances tol = tolerances(o);
  const std::string input = o.inputs.empty() ? "-" : o.inputs.front();
  json doc = {{"command", command}};
  int code = ok;

  if (command == "states") {
    states::CanonicalStateId id;
    id.name = states::parse_name(o.state_name);
    id.parties = o.parties;
    id.a = o.a;
    id.normalized = !o.unnormalized;
    // Emitted bare so it can be piped straight into the other commands.
    doc = io::to_json(states::make(id));
    doc["state"] = {{"name", o.state_name}, {"parties", o.parties}, {"a", o.a},
                    {"normalized", id.normalized}};
    return emit(doc, o, out);
  } else if (command == "normal-form" || command == "optimal-filter") {
    const Loaded l = load(input, in, tol);
    const slocc::SloccConfig cfg = slocc_config(o, tol);
    doc["input_hash"] = l.hash;
    doc["config"] = io::to_json(cfg);
    slocc::Status status;
    if (command == "normal-form") {
      const auto r = std::visit([&](const auto& s) { return slocc::normal_form(s, cfg); }, l.state);
      status = r.status;
      doc["result"] = io::to_json(r);
    } else {
      const auto r = std::visit([&](const auto& s) { return slocc::optimal_filter_report(s, cfg); }, l.state);
      status = r.normal_form.status;
      doc["result"] = io::to_json(r);
    }
    if (o.strict && status != slocc::Status::converged) code = not_converged;
  } else if (command == "lu-normal-form") {
    const Loaded l = load(input, in, tol);
    lu::LuConfig cfg;
    cfg.level_cap = o.level_cap;
    cfg.fix_phases = !o.no_phase;
    doc["input_hash"] = l.hash;
    doc["config"] = {{"level_cap", cfg.level_cap}, {"fix_phases", cfg.fix_phases},
                     {"residual_tol", cfg.residual_tol}, {"eps_zero", cfg.eps_zero}};
    const auto r = lu::lu_normal_form(pure(l), cfg);
    doc["result"] = io::to_json(r);
    if (o.strict && r.status != lu::Status::converged) code = not_converged;
  } else if (command == "monotone") {
    const Loaded l = load(input, in, tol);
    const auto spec = monotone_spec(o, in);
    doc["input_hash"] = l.hash;
    doc["config"] = {{"spec", io::to_json(spec)}};
    doc["result"] = io::to_json(monotones::evaluate(spec, pure(l)));
  } else if (command == "invariance-check" || command == "monotonicity-check") {
    const Loaded l = load(input, in, tol);
    const auto spec = monotone_spec(o, in);
    const std::uint64_t seed = seed_of(o);
    doc["input_hash"] = l.hash;
    doc["seed"] = seed;
    doc["config"] = {{"spec", io::to_json(spec)}, {"trials", o.trials}};
    if (command == "invariance-check") {
      doc["config"]["unitary_only"] = o.unitary;
      doc["result"] = io::to_json(monotones::check_invariance(spec, pure(l), o.trials, seed, o.unitary));
    } else {
      doc["result"] = io::to_json(monotones::check_monotonicity(spec, pure(l), o.trials, seed));
    }
  } else if (command == "equivalence") {
    const Loaded a = load(o.inputs.at(0), in, tol);
    const Loaded b = load(o.inputs.at(1), in, tol);
    const std::uint64_t seed = seed_of(o);
    doc["input_hash"] = json::array({a.hash, b.hash});
    doc["seed"] = seed;
    doc["config"] = {{"restarts", o.restarts}};
    doc["result"] = io::to_json(lu::lu_equivalence_probe(pure(a), pure(b), o.restarts, seed));
  }

  doc["generated_at"] = timestamp();
  emit(doc, o, out);
  return code;
}

void report(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Normal forms and entanglement monotones for multipartite states", "entnf"};
  app.require_subcommand(1);

  auto* nf = app.add_subcommand("normal-form", "SLOCC normal form of a pure or mixed state");
  add_common(nf, o);
  add_slocc(nf, o);

  auto* of = app.add_subcommand("optimal-filter", "optimal local filters and success probability");
  add_common(of, o);
  add_slocc(of, o);

  auto* lnf = app.add_subcommand("lu-normal-form", "local-unitary normal form of a pure state");
  add_common(lnf, o);
  lnf->add_option("--max-iters", o.level_cap, "sweep cap per level");
  lnf->add_flag("--no-phase", o.no_phase, "skip the diagonal phase pass");

  auto* mono = app.add_subcommand("monotone", "evaluate an epsilon-contraction monotone");
  add_common(mono, o);
  add_monotone(mono, o);

  auto* inv = app.add_subcommand("invariance-check", "random SL / unitary invariance test");
  add_common(inv, o);
  add_monotone(inv, o);
  inv->add_option("--trials", o.trials, "number of random transformations");
  inv->add_option("--seed", o.seed, "RNG seed (generated and recorded if omitted)");
  inv->add_flag("--unitary", o.unitary, "draw local unitaries only");

  auto* mon = app.add_subcommand("monotonicity-check", "random two-outcome local filter test");
  add_common(mon, o);
  add_monotone(mon, o);
  mon->add_option("--trials", o.trials, "number of random filters");
  mon->add_option("--seed", o.seed, "RNG seed (generated and recorded if omitted)");

  auto* eq = app.add_subcommand("equivalence", "probe local-unitary equivalence of two states");
  add_common(eq, o, true);
  eq->add_option("--restarts", o.restarts, "random restarts per state");
  eq->add_option("--seed", o.seed, "RNG seed (generated and recorded if omitted)");

  auto* st = app.add_subcommand("states", "canonical states");
  st->require_subcommand(1);
  auto* gen = st->add_subcommand("generate", "emit a canonical state as tensor JSON");
  gen->add_option("name", o.state_name, "bell | ghz | w | two_bell_product | ghz_224 | ghz_223 | unbounded_example")
      ->required();
  gen->add_option("--parties", o.parties, "party count for ghz");
  gen->add_option("--a", o.a, "coefficient of unbounded_example");
  gen->add_flag("--unnormalized", o.unnormalized, "skip normalization");
  gen->add_option("-o,--output", o.output, "write the JSON result here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    report(err, "usage_error", e.what());
    return input_error;
  }

  std::string command;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  try {
    return execute(command, o, in, out);
  } catch (const Error& e) {
    report(err, e.code(), e.what());
    return input_error;
  } catch (const std::exception& e) {
    report(err, "internal_error", e.what());
    return input_error;
  }
}

}  // namespace entnf::cli
