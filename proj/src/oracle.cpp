#include "straf/oracle.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace straf::oracle {

namespace {

ArgSet mask_to_set(std::uint64_t mask, std::size_t n) {
  std::vector<ArgIndex> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (std::uint64_t{1} << i)) members.push_back(static_cast<ArgIndex>(i));
  }
  return ArgSet(std::move(members));
}

void check_cap(const Straf& straf, std::size_t cap) {
  if (straf.arg_count() > cap) {
    throw InputError("naive enumeration refused: " + std::to_string(straf.arg_count()) +
                     " arguments exceed the cap of " + std::to_string(cap) +
                     " (2^|A| subsets)");
  }
}

/// Membership test used during enumeration. Preferred is handled by
/// post-filtering the admissible family, so only the other three families
/// reach check_semantics here.
bool member(const Straf& straf, const ArgSet& s, const SemanticsSpec& spec) {
  return check_semantics(straf, s, spec);
}

std::vector<ArgSet> maximal_elements(std::vector<ArgSet> sets) {
  std::vector<ArgSet> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i != j && sets[i].size() < sets[j].size() && sets[i].is_subset_of(sets[j])) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(sets[i]);
  }
  return out;
}

}  // namespace

bool ExtensionSet::contains(const ArgSet& s) const {
  return std::find(extensions.begin(), extensions.end(), s) != extensions.end();
}

void canonicalize(const Straf& straf, std::vector<ArgSet>& extensions) {
  std::vector<std::pair<std::vector<std::string>, ArgSet>> keyed;
  keyed.reserve(extensions.size());
  for (auto& e : extensions) keyed.emplace_back(e.canonical_ids(straf), std::move(e));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.second == b.second; }),
              keyed.end());
  extensions.clear();
  for (auto& [key, set] : keyed) extensions.push_back(std::move(set));
}

ExtensionSet enumerate_naive_serial(const Straf& straf, const SemanticsSpec& spec,
                                    std::size_t cap) {
  check_cap(straf, cap);
  const std::size_t n = straf.arg_count();
  const SemanticsSpec base{spec.family == Family::Preferred ? Family::Admissible : spec.family,
                           spec.mode, spec.variant};
  std::vector<ArgSet> hits;
  const std::uint64_t lim = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < lim; ++mask) {
    ArgSet s = mask_to_set(mask, n);
    if (member(straf, s, base)) hits.push_back(std::move(s));
  }
  if (spec.family == Family::Preferred) hits = maximal_elements(std::move(hits));
  canonicalize(straf, hits);
  return ExtensionSet{std::move(hits), spec};
}

EnumerateResult enumerate_naive(const Straf& straf, const SemanticsSpec& spec,
                                const EnumerateOptions& opts) {
  check_cap(straf, opts.cap);
  const std::size_t n = straf.arg_count();
  const SemanticsSpec base{spec.family == Family::Preferred ? Family::Admissible : spec.family,
                           spec.mode, spec.variant};
  const std::uint64_t lim = std::uint64_t{1} << n;

  std::atomic<bool> expired{false};
  auto deadline_hit = [&]() {
    return opts.deadline && std::chrono::steady_clock::now() >= *opts.deadline;
  };

  std::vector<ArgSet> hits;
  if (!opts.parallel || lim < 4096) {
    for (std::uint64_t mask = 0; mask < lim; ++mask) {
      if ((mask & 0xfff) == 0 && deadline_hit()) {
        expired = true;
        break;
      }
      ArgSet s = mask_to_set(mask, n);
      if (member(straf, s, base)) hits.push_back(std::move(s));
    }
  } else {
    // Chunked so results merge in subset order no matter which thread ran
    // which chunk. The chunk count is bounded to keep the merge buffer small
    // on huge subset spaces; workers poll the deadline every 4096 masks.
    const std::uint64_t max_chunks = std::uint64_t{1} << 14;
    const std::uint64_t chunk = std::max<std::uint64_t>(4096, (lim + max_chunks - 1) / max_chunks);
    const std::uint64_t n_chunks = (lim + chunk - 1) / chunk;
    std::vector<std::vector<ArgSet>> per_chunk(n_chunks);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
      if (expired.load(std::memory_order_relaxed)) continue;
      const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
      const std::uint64_t hi = std::min(lim, lo + chunk);
      auto& local = per_chunk[c];
      for (std::uint64_t mask = lo; mask < hi; ++mask) {
        if ((mask & 0xfff) == 0 &&
            (expired.load(std::memory_order_relaxed) || deadline_hit())) {
          expired.store(true, std::memory_order_relaxed);
          break;
        }
        ArgSet s = mask_to_set(mask, n);
        if (member(straf, s, base)) local.push_back(std::move(s));
      }
    }
    for (auto& part : per_chunk) {
      hits.insert(hits.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
    }
  }

  if (spec.family == Family::Preferred && !expired) hits = maximal_elements(std::move(hits));
  canonicalize(straf, hits);
  return EnumerateResult{ExtensionSet{std::move(hits), spec}, expired.load()};
}

namespace {

// Classical Dung checkers on the bare attack graph. Kept separate from the
// StrAF predicates on purpose.

bool af_cf(const Straf& af, const ArgSet& s) {
  for (ArgIndex a : s) {
    for (ArgIndex b : af.attackers(a)) {
      if (s.contains(b)) return false;
    }
  }
  return true;
}

bool af_defends(const Straf& af, const ArgSet& s, ArgIndex a) {
  for (ArgIndex b : af.attackers(a)) {
    bool countered = false;
    for (ArgIndex c : af.attackers(b)) {
      if (s.contains(c)) {
        countered = true;
        break;
      }
    }
    if (!countered) return false;
  }
  return true;
}

bool af_admissible(const Straf& af, const ArgSet& s) {
  if (!af_cf(af, s)) return false;
  for (ArgIndex a : s) {
    if (!af_defends(af, s, a)) return false;
  }
  return true;
}

bool af_complete(const Straf& af, const ArgSet& s) {
  if (!af_admissible(af, s)) return false;
  for (ArgIndex a = 0; a < af.arg_count(); ++a) {
    if (!s.contains(a) && af_defends(af, s, a)) return false;
  }
  return true;
}

bool af_stable(const Straf& af, const ArgSet& s) {
  if (!af_cf(af, s)) return false;
  for (ArgIndex a = 0; a < af.arg_count(); ++a) {
    if (s.contains(a)) continue;
    bool attacked = false;
    for (ArgIndex b : af.attackers(a)) {
      if (s.contains(b)) {
        attacked = true;
        break;
      }
    }
    if (!attacked) return false;
  }
  return true;
}

}  // namespace

ExtensionSet classical_af_enumerate(const Straf& af, ClassicalFamily family, std::size_t cap) {
  check_cap(af, cap);
  const std::size_t n = af.arg_count();
  const std::uint64_t lim = std::uint64_t{1} << n;
  std::vector<ArgSet> hits;
  for (std::uint64_t mask = 0; mask < lim; ++mask) {
    ArgSet s = mask_to_set(mask, n);
    bool ok = false;
    switch (family) {
      case ClassicalFamily::ConflictFree: ok = af_cf(af, s); break;
      case ClassicalFamily::Admissible: ok = af_admissible(af, s); break;
      case ClassicalFamily::Complete: ok = af_complete(af, s); break;
      case ClassicalFamily::Preferred: ok = af_admissible(af, s); break;
      case ClassicalFamily::Stable: ok = af_stable(af, s); break;
    }
    if (ok) hits.push_back(std::move(s));
  }
  if (family == ClassicalFamily::Preferred) hits = maximal_elements(std::move(hits));
  canonicalize(af, hits);
  return ExtensionSet{std::move(hits), SemanticsSpec{}};
}

}  // namespace straf::oracle
