#ifndef STRAF_BENCHGEN_HPP
#define STRAF_BENCHGEN_HPP

#include <filesystem>
#include <random>

#include "straf/core.hpp"

namespace straf::gen {

/// Portable deterministic randomness: mt19937_64 with rejection-sampled
/// bounded draws, so corpora are byte-identical across standard libraries
/// (std::uniform_int_distribution is not portable). Recorded in manifests as
/// "mt19937_64+rejection".
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [lo, hi], inclusive.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  /// True with probability p (53-bit mantissa threshold).
  bool coin(double p);

private:
  std::mt19937_64 engine_;
};

inline constexpr std::string_view kRngAlgorithm = "mt19937_64+rejection";

/// splitmix64-mixed sub-seed for instance (size, index) under a corpus seed.
std::uint64_t subseed(std::uint64_t seed, std::uint32_t size, std::uint32_t index);

/// Arguments plus attack relation, before strengths are attached. Argument
/// ids are a1..aN in declaration order.
struct Skeleton {
  std::uint32_t n = 0;
  std::vector<std::pair<ArgIndex, ArgIndex>> attacks;
};

/// Erdős–Rényi digraph: every ordered pair — the diagonal included unless
/// self_loops is false — is an attack with probability p, drawn row-major.
Skeleton gen_er(std::uint32_t n, double p, std::uint64_t seed, bool self_loops = true);

/// Barabási–Albert growth: seed graph is a single node for m=1 and an m-node
/// clique otherwise; each new node attaches m edges to distinct existing
/// nodes drawn proportionally to degree (uniformly while all degrees are
/// zero), and each undirected edge is oriented by a fair coin.
Skeleton gen_ba(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

/// i.i.d. uniform strengths over the inclusive range, in declaration order.
Straf assign_strengths(const Skeleton& skeleton, std::uint32_t lo, std::uint32_t hi,
                       std::uint64_t seed, AggOp agg = AggOp::Sum);

struct CorpusSpec {
  enum class Model { Er, Ba } model = Model::Er;
  double p = 0.1;        // ER
  std::uint32_t m = 1;   // BA
  std::vector<std::uint32_t> sizes;
  std::uint32_t count = 1;  // instances per size
  std::uint32_t strength_lo = 1, strength_hi = 20;
  std::uint64_t seed = 0;
  bool er_self_loops = true;
};

/// The corpus shapes behind the experiment protocol: sizes 5,10,...,60 with
/// 20 instances per size for enumeration, 5,10,...,250 for find-one.
CorpusSpec enumeration_preset(CorpusSpec::Model model, double p, std::uint64_t seed);
CorpusSpec find_one_preset(CorpusSpec::Model model, double p, std::uint64_t seed);

struct CorpusEntry {
  std::string file;
  std::uint32_t size = 0;
  std::uint32_t index = 0;
  std::uint64_t subseed = 0;
  std::size_t n_attacks = 0;
};

struct Corpus {
  CorpusSpec spec;
  std::vector<CorpusEntry> entries;
};

Straf make_instance(const CorpusSpec& spec, std::uint32_t size, std::uint32_t index);

/// Writes one .straf file per (size, index) plus manifest.json into dir.
Corpus write_corpus(const CorpusSpec& spec, const std::filesystem::path& dir);

/// Reads manifest.json back (for the bench harness).
Corpus read_manifest(const std::filesystem::path& dir);

}  // namespace straf::gen

#endif
