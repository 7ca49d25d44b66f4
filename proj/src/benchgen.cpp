#include "straf/benchgen.hpp"

#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "straf/format.hpp"

namespace straf::gen {

using nlohmann::json;

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw InputError("empty range for uniform draw");
  const std::uint64_t range = hi - lo + 1;
  if (range == 0) return next();  // full 64-bit range
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % range + 1) % range;
  while (true) {
    std::uint64_t draw = next();
    if (draw <= limit) return lo + draw % range;
  }
}

bool Rng::coin(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  // 53 uniform mantissa bits against the threshold.
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return u < p;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t subseed(std::uint64_t seed, std::uint32_t size, std::uint32_t index) {
  return seed ^ splitmix64((static_cast<std::uint64_t>(size) << 32) | index);
}

Skeleton gen_er(std::uint32_t n, double p, std::uint64_t seed, bool self_loops) {
  if (n < 1) throw InputError("ER generation needs n >= 1");
  if (p < 0.0 || p > 1.0) throw InputError("ER probability must lie in [0,1]");
  Rng rng(seed);
  Skeleton sk;
  sk.n = n;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j && !self_loops) continue;
      if (rng.coin(p)) sk.attacks.emplace_back(i, j);
    }
  }
  return sk;
}

Skeleton gen_ba(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  if (m < 1) throw InputError("BA generation needs m >= 1");
  if (n < m + 1) throw InputError("BA generation needs n >= m+1");
  Rng rng(seed);
  Skeleton sk;
  sk.n = n;
  std::vector<std::uint64_t> degree(n, 0);
  const std::uint32_t seed_nodes = m == 1 ? 1 : m;

  auto add_edge = [&](std::uint32_t u, std::uint32_t v) {
    degree[u] += 1;
    degree[v] += 1;
    // Fair coin orients the undirected edge into an attack.
    if (rng.coin(0.5)) {
      sk.attacks.emplace_back(u, v);
    } else {
      sk.attacks.emplace_back(v, u);
    }
  };

  for (std::uint32_t u = 0; u < seed_nodes; ++u) {
    for (std::uint32_t v = u + 1; v < seed_nodes; ++v) add_edge(u, v);
  }

  std::vector<std::uint32_t> chosen;
  for (std::uint32_t v = seed_nodes; v < n; ++v) {
    chosen.clear();
    while (chosen.size() < m) {
      std::uint64_t total = 0;
      for (std::uint32_t u = 0; u < v; ++u) total += degree[u];
      std::uint32_t pick;
      if (total == 0) {
        pick = static_cast<std::uint32_t>(rng.uniform(0, v - 1));
      } else {
        std::uint64_t r = rng.uniform(0, total - 1);
        pick = 0;
        while (r >= degree[pick]) {
          r -= degree[pick];
          ++pick;
        }
      }
      if (std::find(chosen.begin(), chosen.end(), pick) != chosen.end()) continue;
      chosen.push_back(pick);
    }
    for (std::uint32_t u : chosen) add_edge(v, u);
  }
  return sk;
}

Straf assign_strengths(const Skeleton& skeleton, std::uint32_t lo, std::uint32_t hi,
                       std::uint64_t seed, AggOp agg) {
  if (lo > hi) throw InputError("empty strength range");
  Rng rng(seed);
  StrafBuilder builder;
  builder.aggregator(agg);
  for (std::uint32_t i = 0; i < skeleton.n; ++i) {
    builder.add_argument("a" + std::to_string(i + 1));
  }
  for (auto [f, t] : skeleton.attacks) {
    builder.add_attack("a" + std::to_string(f + 1), "a" + std::to_string(t + 1));
  }
  for (std::uint32_t i = 0; i < skeleton.n; ++i) {
    builder.set_strength("a" + std::to_string(i + 1),
                         static_cast<std::uint32_t>(rng.uniform(lo, hi)));
  }
  return builder.build();
}

CorpusSpec enumeration_preset(CorpusSpec::Model model, double p, std::uint64_t seed) {
  CorpusSpec spec;
  spec.model = model;
  spec.p = p;
  spec.m = 1;
  for (std::uint32_t n = 5; n <= 60; n += 5) spec.sizes.push_back(n);
  spec.count = 20;
  spec.seed = seed;
  return spec;
}

CorpusSpec find_one_preset(CorpusSpec::Model model, double p, std::uint64_t seed) {
  CorpusSpec spec = enumeration_preset(model, p, seed);
  spec.sizes.clear();
  for (std::uint32_t n = 5; n <= 250; n += 5) spec.sizes.push_back(n);
  return spec;
}

Straf make_instance(const CorpusSpec& spec, std::uint32_t size, std::uint32_t index) {
  const std::uint64_t s = subseed(spec.seed, size, index);
  Skeleton sk = spec.model == CorpusSpec::Model::Er
                    ? gen_er(size, spec.p, s, spec.er_self_loops)
                    : gen_ba(size, spec.m, s);
  // Strengths come from an independent stream so graph and strength draws
  // cannot interleave differently across generator models.
  return assign_strengths(sk, spec.strength_lo, spec.strength_hi, splitmix64(s));
}

namespace {

std::string model_name(CorpusSpec::Model m) {
  return m == CorpusSpec::Model::Er ? "er" : "ba";
}

std::string instance_name(const CorpusSpec& spec, std::uint32_t size, std::uint32_t index) {
  return model_name(spec.model) + "_n" + std::to_string(size) + "_i" + std::to_string(index) +
         ".straf";
}

}  // namespace

Corpus write_corpus(const CorpusSpec& spec, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Corpus corpus;
  corpus.spec = spec;
  for (std::uint32_t size : spec.sizes) {
    for (std::uint32_t index = 0; index < spec.count; ++index) {
      Straf straf = make_instance(spec, size, index);
      CorpusEntry entry;
      entry.file = instance_name(spec, size, index);
      entry.size = size;
      entry.index = index;
      entry.subseed = subseed(spec.seed, size, index);
      entry.n_attacks = straf.attacks().size();
      save_straf(straf, dir / entry.file);
      corpus.entries.push_back(std::move(entry));
    }
  }

  json manifest;
  manifest["model"] = model_name(spec.model);
  if (spec.model == CorpusSpec::Model::Er) {
    manifest["p"] = spec.p;
    manifest["self_loops"] = spec.er_self_loops;
  } else {
    manifest["m"] = spec.m;
  }
  manifest["sizes"] = spec.sizes;
  manifest["count"] = spec.count;
  manifest["strength_range"] = {spec.strength_lo, spec.strength_hi};
  manifest["seed"] = spec.seed;
  manifest["rng"] = std::string(kRngAlgorithm);
  json files = json::array();
  for (const auto& e : corpus.entries) {
    files.push_back({{"file", e.file},
                     {"size", e.size},
                     {"index", e.index},
                     {"subseed", e.subseed},
                     {"attacks", e.n_attacks}});
  }
  manifest["files"] = std::move(files);
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw InputError("cannot write manifest in " + dir.string());
  out << manifest.dump(2) << "\n";
  return corpus;
}

Corpus read_manifest(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw InputError("no manifest.json in " + dir.string());
  json manifest = json::parse(in, nullptr, true, true);
  Corpus corpus;
  CorpusSpec& spec = corpus.spec;
  spec.model = manifest.at("model").get<std::string>() == "er" ? CorpusSpec::Model::Er
                                                               : CorpusSpec::Model::Ba;
  if (manifest.contains("p")) spec.p = manifest["p"].get<double>();
  if (manifest.contains("m")) spec.m = manifest["m"].get<std::uint32_t>();
  if (manifest.contains("self_loops")) spec.er_self_loops = manifest["self_loops"].get<bool>();
  spec.sizes = manifest.at("sizes").get<std::vector<std::uint32_t>>();
  spec.count = manifest.at("count").get<std::uint32_t>();
  auto range = manifest.at("strength_range").get<std::vector<std::uint32_t>>();
  if (range.size() == 2) {
    spec.strength_lo = range[0];
    spec.strength_hi = range[1];
  }
  spec.seed = manifest.at("seed").get<std::uint64_t>();
  for (const auto& f : manifest.at("files")) {
    CorpusEntry e;
    e.file = f.at("file").get<std::string>();
    e.size = f.at("size").get<std::uint32_t>();
    e.index = f.at("index").get<std::uint32_t>();
    if (f.contains("subseed")) e.subseed = f["subseed"].get<std::uint64_t>();
    if (f.contains("attacks")) e.n_attacks = f["attacks"].get<std::size_t>();
    corpus.entries.push_back(std::move(e));
  }
  return corpus;
}

}  // namespace straf::gen
