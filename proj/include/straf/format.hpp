#ifndef STRAF_FORMAT_HPP
#define STRAF_FORMAT_HPP

#include <iosfwd>
#include <filesystem>
#include <string>
#include <string_view>

#include "straf/core.hpp"

namespace straf {

/// Parse options for the line-oriented StrAF text format:
///
///   # comment
///   arg(a1).
///   att(a1,a4).
///   str(a1,2).
///
/// Whitespace is insignificant, '#' starts a comment, every argument needs
/// exactly one str(...) fact, unknown ids in att/str are errors.
struct ParseOptions {
  AggOp aggregator = AggOp::Sum;
  bool allow_zero_strength = false;
};

Straf parse_straf(std::string_view text, const ParseOptions& opts = {});
Straf load_straf(const std::filesystem::path& path, const ParseOptions& opts = {});

/// Serialization is canonical: arg facts in declaration order, att facts in
/// sorted pair order, str facts in declaration order. parse(serialize(x))
/// reproduces x.
std::string serialize_straf(const Straf& straf);
void save_straf(const Straf& straf, const std::filesystem::path& path);

}  // namespace straf

#endif
