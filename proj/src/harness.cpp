#include "straf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <thread>

#include "straf/format.hpp"

namespace straf::bench {

namespace {

std::string generator_label(const gen::CorpusSpec& spec) {
  if (spec.model == gen::CorpusSpec::Model::Er) {
    std::string p = std::to_string(spec.p);
    p.erase(p.find_last_not_of('0') + 1);
    if (!p.empty() && p.back() == '.') p.pop_back();
    return "er(p=" + p + ")";
  }
  return "ba(m=" + std::to_string(spec.m) + ")";
}

RunRecord run_one(const std::filesystem::path& file, const std::string& generator,
                  const BenchConfig& config) {
  RunRecord rec;
  rec.instance = file.string();
  rec.generator = generator;
  rec.semantics = to_string(config.spec);
  rec.task = std::string(reason::to_string(config.task));
  rec.engine = std::string(reason::to_string(config.engine));
  try {
    Straf straf = load_straf(file);
    rec.n_args = straf.arg_count();
    rec.n_attacks = straf.attacks().size();

    reason::ReasonConfig rc;
    rc.solver.timeout = config.timeout;
    rc.solver.external_cmd = config.external_cmd;
    rc.solver.seed = config.seed;
    rc.oracle_cap = config.oracle_cap;

    reason::Task task;
    task.kind = config.task;
    task.spec = config.spec;
    task.engine = config.engine;
    // DC/DS need a subject; the first argument is the conventional probe.
    if (config.task == reason::TaskKind::Credulous ||
        config.task == reason::TaskKind::Skeptical) {
      task.subject_arg = 0;
    } else if (config.task == reason::TaskKind::Verify) {
      task.subject_set = ArgSet{};
    }

    reason::TaskAnswer answer = reason::run(straf, task, rc);
    rec.wall_ms = answer.stats.wall_ms;
    if (answer.status == reason::RunStatus::TimeoutPartial) {
      rec.status = "timeout";
      // The record contract: a timeout row witnesses the full budget.
      rec.wall_ms = std::max<std::int64_t>(rec.wall_ms, config.timeout.count());
    } else {
      rec.status = "ok";
      if (answer.extensions) {
        rec.result_size = static_cast<std::int64_t>(answer.extensions->extensions.size());
      } else if (answer.yes) {
        rec.result_size = *answer.yes ? 1 : 0;
      }
    }
  } catch (const std::exception& e) {
    rec.status = "error";
  }
  return rec;
}

}  // namespace

std::vector<RunRecord> bench_run(const std::filesystem::path& corpus_dir,
                                 const BenchConfig& config,
                                 std::vector<std::string>* missing) {
  std::vector<std::filesystem::path> files;
  std::string generator = "-";
  if (std::filesystem::exists(corpus_dir / "manifest.json")) {
    gen::Corpus corpus = gen::read_manifest(corpus_dir);
    generator = generator_label(corpus.spec);
    for (const auto& entry : corpus.entries) {
      std::filesystem::path p = corpus_dir / entry.file;
      if (!std::filesystem::exists(p)) {
        if (missing) missing->push_back(p.string());
        continue;
      }
      files.push_back(std::move(p));
    }
  } else {
    for (const auto& e : std::filesystem::directory_iterator(corpus_dir)) {
      if (e.path().extension() == ".straf") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  }

  std::vector<RunRecord> rows(files.size());
  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < files.size(); ++i) {
      rows[i] = run_one(files[i], generator, config);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= files.size()) return;
          rows[i] = run_one(files[i], generator, config);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string csv_header() {
  return "instance,n_args,n_attacks,generator,semantics,task,engine,wall_ms,status,"
         "result_size";
}

std::string to_csv_row(const RunRecord& r) {
  return r.instance + "," + std::to_string(r.n_args) + "," + std::to_string(r.n_attacks) + "," +
         r.generator + "," + r.semantics + "," + r.task + "," + r.engine + "," +
         std::to_string(r.wall_ms) + "," + r.status + "," + std::to_string(r.result_size);
}

void write_csv(const std::vector<RunRecord>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << csv_header() << "\n";
  for (const auto& r : rows) out << to_csv_row(r) << "\n";
}

std::string summary_csv(const std::vector<RunRecord>& rows) {
  struct Key {
    std::size_t size;
    std::string semantics, task, engine;
    bool operator<(const Key& o) const {
      return std::tie(size, semantics, task, engine) <
             std::tie(o.size, o.semantics, o.task, o.engine);
    }
  };
  std::map<Key, std::vector<const RunRecord*>> groups;
  for (const auto& r : rows) {
    groups[{r.n_args, r.semantics, r.task, r.engine}].push_back(&r);
  }
  std::string out = "size,semantics,task,engine,count,mean_ms,median_ms,timeouts\n";
  for (auto& [key, group] : groups) {
    std::vector<std::int64_t> times;
    std::int64_t timeouts = 0;
    for (const auto* r : group) {
      times.push_back(r->wall_ms);
      if (r->status == "timeout") ++timeouts;
    }
    std::sort(times.begin(), times.end());
    std::int64_t total = 0;
    for (auto t : times) total += t;
    const std::int64_t mean = times.empty() ? 0 : total / static_cast<std::int64_t>(times.size());
    const std::int64_t median = times.empty() ? 0 : times[times.size() / 2];
    out += std::to_string(key.size) + "," + key.semantics + "," + key.task + "," + key.engine +
           "," + std::to_string(group.size()) + "," + std::to_string(mean) + "," +
           std::to_string(median) + "," + std::to_string(timeouts) + "\n";
  }
  return out;
}

void write_summary_csv(const std::vector<RunRecord>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << summary_csv(rows);
}

}  // namespace straf::bench
