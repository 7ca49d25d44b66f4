#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "straf/format.hpp"
#include "straf/harness.hpp"
#include "straf/reasoning.hpp"

using nlohmann::json;
using namespace straf;

namespace {

// Exit codes follow solver-competition conventions: a NO answer is not an
// error, and timeouts are distinct from both.
enum ExitCode {
  kOk = 0,
  kNo = 1,
  kUsage = 2,
  kInputError = 3,
  kTimeout = 4,
  kInternal = 5,
};

struct SolveArgs {
  std::string task = "EE";
  std::string sem = "com";
  std::string mode = "strong";
  std::string variant = "revisited";
  std::string engine = "pb";
  std::string agg = "sum";
  std::string boundary = "strict";
  std::string arg_id;
  std::string set_ids;
  std::string cmd;
  std::string file;
  double timeout_s = 600.0;
  std::uint64_t seed = 0;
  std::size_t cap = 20;
  bool allow_zero = false;
  bool json_out = false;
};

SemanticsSpec parse_spec(const std::string& sem, const std::string& mode,
                         const std::string& variant) {
  SemanticsSpec spec;
  if (sem == "adm") spec.family = Family::Admissible;
  else if (sem == "com") spec.family = Family::Complete;
  else if (sem == "prf") spec.family = Family::Preferred;
  else if (sem == "stb") spec.family = Family::Stable;
  else throw InputError("unknown semantics: " + sem);
  spec.mode = mode == "strong" ? Mode::Strong : Mode::Weak;
  spec.variant = variant == "legacy" ? CompleteVariant::Legacy : CompleteVariant::Revisited;
  return spec;
}

reason::TaskKind parse_task(const std::string& task) {
  if (task == "SE") return reason::TaskKind::FindOne;
  if (task == "EE") return reason::TaskKind::EnumerateAll;
  if (task == "DC") return reason::TaskKind::Credulous;
  if (task == "DS") return reason::TaskKind::Skeptical;
  if (task == "VER") return reason::TaskKind::Verify;
  throw InputError("unknown task: " + task);
}

reason::Engine parse_engine(const std::string& engine) {
  if (engine == "oracle") return reason::Engine::Oracle;
  if (engine == "pb") return reason::Engine::PbEmbedded;
  if (engine == "ext") return reason::Engine::PbExternal;
  throw InputError("unknown engine: " + engine);
}

std::vector<std::string> split_ids(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string external_command(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("STRAF_EXT_SOLVER")) return env;
  return {};
}

int run_solve(const SolveArgs& args) {
  ParseOptions popts;
  popts.aggregator = args.agg == "max" ? AggOp::Max : AggOp::Sum;
  popts.allow_zero_strength = args.allow_zero;
  Straf straf = load_straf(args.file, popts);

  reason::Task task;
  task.kind = parse_task(args.task);
  task.spec = parse_spec(args.sem, args.mode, args.variant);
  task.engine = parse_engine(args.engine);
  if (!args.arg_id.empty()) task.subject_arg = straf.index_of(args.arg_id);
  if (task.kind == reason::TaskKind::Verify) {
    std::vector<ArgIndex> members;
    for (const auto& id : split_ids(args.set_ids)) members.push_back(straf.index_of(id));
    task.subject_set = ArgSet(std::move(members));
  }
  if ((task.kind == reason::TaskKind::Credulous || task.kind == reason::TaskKind::Skeptical) &&
      !task.subject_arg) {
    throw InputError("--arg is required for DC/DS tasks");
  }

  reason::ReasonConfig cfg;
  cfg.solver.timeout =
      std::chrono::milliseconds(static_cast<std::int64_t>(args.timeout_s * 1000));
  cfg.solver.seed = args.seed;
  cfg.solver.external_cmd = external_command(args.cmd);
  cfg.boundary = args.boundary == "paper" ? encode::DefenseBoundary::PaperLiteral
                                          : encode::DefenseBoundary::Strict;
  cfg.oracle_cap = args.cap;
  if (task.engine == reason::Engine::PbExternal && cfg.solver.external_cmd.empty()) {
    throw InputError("--engine ext needs --cmd or STRAF_EXT_SOLVER");
  }

  reason::TaskAnswer answer = reason::run(straf, task, cfg);

  if (args.json_out) {
    json out;
    out["task"] = args.task;
    out["semantics"] = to_string(task.spec);
    out["engine"] = args.engine;
    out["status"] =
        answer.status == reason::RunStatus::Complete ? "complete" : "timeout-partial";
    if (answer.yes) out["answer"] = *answer.yes;
    if (answer.witness) out["witness"] = answer.witness->canonical_ids(straf);
    if (answer.extensions) {
      json exts = json::array();
      for (const auto& e : answer.extensions->extensions) exts.push_back(e.canonical_ids(straf));
      out["extensions"] = std::move(exts);
    }
    out["stats"] = {{"solver_calls", answer.stats.solver_calls},
                    {"wall_ms", answer.stats.wall_ms}};
    std::cout << out.dump(2) << "\n";
  } else if (answer.status == reason::RunStatus::TimeoutPartial) {
    std::cout << "TIMEOUT\n";
  } else if (answer.extensions) {
    for (const auto& e : answer.extensions->extensions) {
      std::cout << e.to_string(straf) << "\n";
    }
  } else if (task.kind == reason::TaskKind::FindOne) {
    if (answer.witness) {
      std::cout << answer.witness->to_string(straf) << "\n";
    } else {
      std::cout << "NO\n";
    }
  } else if (answer.yes) {
    std::cout << (*answer.yes ? "YES" : "NO") << "\n";
  }

  if (answer.status == reason::RunStatus::TimeoutPartial) return kTimeout;
  if (answer.yes && !*answer.yes) return kNo;
  return kOk;
}

struct EncodeArgs {
  std::string sem = "com";
  std::string mode = "strong";
  std::string variant = "revisited";
  std::string boundary = "strict";
  std::string file;
  std::string out;
};

int run_encode(const EncodeArgs& args) {
  Straf straf = load_straf(args.file);
  SemanticsSpec spec = parse_spec(args.sem, args.mode, args.variant);
  encode::EncodingOptions opts;
  opts.boundary = args.boundary == "paper" ? encode::DefenseBoundary::PaperLiteral
                                           : encode::DefenseBoundary::Strict;
  pb::PBModel model = encode::assemble(straf, spec, opts);
  std::string text = pb::emit_opb(model);
  if (args.out.empty() || args.out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(args.out, std::ios::binary);
    if (!f) throw InputError("cannot write " + args.out);
    f << text;
  }
  return kOk;
}

struct GenArgs {
  std::string model = "er";
  std::string preset;
  std::uint32_t n = 10;
  double p = 0.1;
  std::uint32_t m = 1;
  std::uint64_t seed = 0;
  std::string range = "1..20";
  std::uint32_t count = 1;
  bool no_self_loops = false;
  std::string out_dir;
};

std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& range) {
  auto dots = range.find("..");
  if (dots == std::string::npos) throw InputError("--range expects LO..HI");
  try {
    std::uint32_t lo = static_cast<std::uint32_t>(std::stoul(range.substr(0, dots)));
    std::uint32_t hi = static_cast<std::uint32_t>(std::stoul(range.substr(dots + 2)));
    return {lo, hi};
  } catch (const std::exception&) {
    throw InputError("--range expects LO..HI");
  }
}

int run_gen(const GenArgs& args) {
  gen::CorpusSpec spec;
  spec.model = args.model == "ba" ? gen::CorpusSpec::Model::Ba : gen::CorpusSpec::Model::Er;
  if (!args.preset.empty()) {
    spec = args.preset == "findone" ? gen::find_one_preset(spec.model, args.p, args.seed)
                                    : gen::enumeration_preset(spec.model, args.p, args.seed);
    spec.m = args.m;
  } else {
    spec.p = args.p;
    spec.m = args.m;
    spec.sizes = {args.n};
    spec.count = args.count;
    spec.seed = args.seed;
  }
  auto [lo, hi] = parse_range(args.range);
  spec.strength_lo = lo;
  spec.strength_hi = hi;
  spec.er_self_loops = !args.no_self_loops;
  gen::Corpus corpus = gen::write_corpus(spec, args.out_dir);
  std::cout << "wrote " << corpus.entries.size() << " instances to " << args.out_dir << "\n";
  return kOk;
}

struct BenchArgs {
  std::string corpus;
  std::string sem = "com";
  std::string mode = "strong";
  std::string variant = "revisited";
  std::string task = "EE";
  std::string engine = "pb";
  std::string cmd;
  double timeout_s = 600.0;
  std::string csv;
  std::string summary;
  unsigned jobs = 1;
  std::size_t cap = 64;
  std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& args) {
  bench::BenchConfig config;
  config.spec = parse_spec(args.sem, args.mode, args.variant);
  config.task = parse_task(args.task);
  config.engine = parse_engine(args.engine);
  config.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(args.timeout_s * 1000));
  config.external_cmd = external_command(args.cmd);
  config.jobs = args.jobs;
  config.oracle_cap = args.cap;
  config.seed = args.seed;

  std::vector<std::string> missing;
  std::vector<bench::RunRecord> rows = bench::bench_run(args.corpus, config, &missing);
  for (const auto& m : missing) std::cerr << "missing instance: " << m << "\n";
  if (!args.csv.empty()) {
    bench::write_csv(rows, args.csv);
  } else {
    std::cout << bench::csv_header() << "\n";
    for (const auto& r : rows) std::cout << bench::to_csv_row(r) << "\n";
  }
  std::string summary_path = args.summary;
  if (summary_path.empty() && !args.csv.empty()) {
    std::filesystem::path p = args.csv;
    p.replace_extension(".summary.csv");
    summary_path = p.string();
  }
  if (!summary_path.empty()) bench::write_summary_csv(rows, summary_path);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"StrAF reasoning toolkit: extensions of strength-based argumentation "
               "frameworks via a definitional oracle and pseudo-Boolean solving"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "run a reasoning task on a .straf file");
  solve_cmd->add_option("--task", solve_args.task)
      ->check(CLI::IsMember({"SE", "EE", "DC", "DS", "VER"}));
  solve_cmd->add_option("--sem", solve_args.sem)
      ->check(CLI::IsMember({"adm", "com", "prf", "stb"}));
  solve_cmd->add_option("--mode", solve_args.mode)->check(CLI::IsMember({"strong", "weak"}));
  solve_cmd->add_option("--variant", solve_args.variant)
      ->check(CLI::IsMember({"revisited", "legacy"}));
  solve_cmd->add_option("--arg", solve_args.arg_id, "subject argument for DC/DS");
  solve_cmd->add_option("--set", solve_args.set_ids, "comma-separated subject set for VER");
  solve_cmd->add_option("--engine", solve_args.engine)
      ->check(CLI::IsMember({"oracle", "pb", "ext"}));
  solve_cmd->add_option("--cmd", solve_args.cmd,
                        "external solver argv template ({opb} placeholder)");
  solve_cmd->add_option("--agg", solve_args.agg)->check(CLI::IsMember({"sum", "max"}));
  solve_cmd->add_option("--boundary", solve_args.boundary)
      ->check(CLI::IsMember({"strict", "paper"}));
  solve_cmd->add_option("--timeout", solve_args.timeout_s, "seconds");
  solve_cmd->add_option("--seed", solve_args.seed);
  solve_cmd->add_option("--cap", solve_args.cap, "naive-oracle argument cap");
  solve_cmd->add_flag("--allow-zero-strength", solve_args.allow_zero);
  solve_cmd->add_flag("--json", solve_args.json_out);
  solve_cmd->add_option("file", solve_args.file)->required();

  EncodeArgs encode_args;
  auto* encode_cmd = app.add_subcommand("encode", "emit the OPB encoding of a semantics");
  encode_cmd->add_option("--sem", encode_args.sem)
      ->check(CLI::IsMember({"adm", "com", "stb"}));
  encode_cmd->add_option("--mode", encode_args.mode)->check(CLI::IsMember({"strong", "weak"}));
  encode_cmd->add_option("--variant", encode_args.variant)
      ->check(CLI::IsMember({"revisited", "legacy"}));
  encode_cmd->add_option("--boundary", encode_args.boundary)
      ->check(CLI::IsMember({"strict", "paper"}));
  encode_cmd->add_option("-o,--out", encode_args.out, "output path (default stdout)");
  encode_cmd->add_option("file", encode_args.file)->required();

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "generate random StrAF instances");
  gen_cmd->add_option("--model", gen_args.model)->check(CLI::IsMember({"er", "ba"}));
  gen_cmd->add_option("--preset", gen_args.preset)->check(CLI::IsMember({"enum", "findone"}));
  gen_cmd->add_option("-n", gen_args.n, "argument count");
  gen_cmd->add_option("-p", gen_args.p, "ER attack probability");
  gen_cmd->add_option("-m", gen_args.m, "BA edges per new node");
  gen_cmd->add_option("--seed", gen_args.seed);
  gen_cmd->add_option("--range", gen_args.range, "strength range LO..HI");
  gen_cmd->add_option("--count", gen_args.count, "instances per size");
  gen_cmd->add_flag("--no-self-loops", gen_args.no_self_loops);
  gen_cmd->add_option("-o,--out", gen_args.out_dir)->required();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "run a task over a corpus, emitting CSV");
  bench_cmd->add_option("--corpus", bench_args.corpus)->required();
  bench_cmd->add_option("--sem", bench_args.sem)
      ->check(CLI::IsMember({"adm", "com", "prf", "stb"}));
  bench_cmd->add_option("--mode", bench_args.mode)->check(CLI::IsMember({"strong", "weak"}));
  bench_cmd->add_option("--variant", bench_args.variant)
      ->check(CLI::IsMember({"revisited", "legacy"}));
  bench_cmd->add_option("--task", bench_args.task)
      ->check(CLI::IsMember({"SE", "EE", "DC", "DS", "VER"}));
  bench_cmd->add_option("--engine", bench_args.engine)
      ->check(CLI::IsMember({"oracle", "pb", "ext"}));
  bench_cmd->add_option("--cmd", bench_args.cmd);
  bench_cmd->add_option("--timeout", bench_args.timeout_s, "seconds per instance");
  bench_cmd->add_option("--csv", bench_args.csv, "per-run CSV output path");
  bench_cmd->add_option("--summary", bench_args.summary, "aggregated CSV output path");
  bench_cmd->add_option("--jobs", bench_args.jobs, "concurrent instances");
  bench_cmd->add_option("--cap", bench_args.cap, "naive-oracle argument cap");
  bench_cmd->add_option("--seed", bench_args.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args);
    if (*encode_cmd) return run_encode(encode_args);
    if (*gen_cmd) return run_gen(gen_args);
    if (*bench_cmd) return run_bench(bench_args);
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const reason::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
