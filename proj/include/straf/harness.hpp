#ifndef STRAF_HARNESS_HPP
#define STRAF_HARNESS_HPP

#include <filesystem>

#include "straf/benchgen.hpp"
#include "straf/reasoning.hpp"

namespace straf::bench {

/// One row of the experiment matrix: a (instance, config) run.
struct RunRecord {
  std::string instance;  // file path
  std::size_t n_args = 0;
  std::size_t n_attacks = 0;
  std::string generator;  // e.g. "er(p=0.1)" / "ba(m=1)" / "-"
  std::string semantics;
  std::string task;
  std::string engine;
  std::int64_t wall_ms = 0;
  std::string status;  // ok | timeout | error
  std::int64_t result_size = -1;  // extension count, or 1/0 for yes/no
};

struct BenchConfig {
  SemanticsSpec spec;
  reason::TaskKind task = reason::TaskKind::EnumerateAll;
  reason::Engine engine = reason::Engine::PbEmbedded;
  std::chrono::milliseconds timeout{600'000};
  std::string external_cmd;
  std::size_t oracle_cap = 64;  // bench raises the naive cap; timeouts guard it
  unsigned jobs = 1;
  std::uint64_t seed = 0;
};

/// Runs every corpus instance under config; missing instances are reported to
/// `missing` and skipped. Rows come back in deterministic (file) order no
/// matter how many jobs ran.
std::vector<RunRecord> bench_run(const std::filesystem::path& corpus_dir,
                                 const BenchConfig& config,
                                 std::vector<std::string>* missing = nullptr);

std::string csv_header();
std::string to_csv_row(const RunRecord& r);
void write_csv(const std::vector<RunRecord>& rows, const std::filesystem::path& path);

/// Per-(size, semantics, task, engine) aggregation: count, mean/median wall
/// time, timeouts. The data behind runtime-vs-size plots.
std::string summary_csv(const std::vector<RunRecord>& rows);
void write_summary_csv(const std::vector<RunRecord>& rows, const std::filesystem::path& path);

}  // namespace straf::bench

#endif
