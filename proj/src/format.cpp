#include "straf/format.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace straf {

namespace {

struct Fact {
  std::string name;
  std::vector<std::string> args;
  std::size_t line;
};

class FactScanner {
public:
  explicit FactScanner(std::string_view text) : text_(text) {}

  // Facts look like name(tok,...) followed by '.'; comments run to newline.
  std::optional<Fact> next() {
    skip_blank();
    if (pos_ >= text_.size()) return std::nullopt;
    Fact f;
    f.line = line_;
    f.name = read_token("predicate name");
    expect('(');
    while (true) {
      f.args.push_back(read_token("argument"));
      skip_blank();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    expect(')');
    expect('.');
    return f;
  }

private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string read_token(const char* what) {
    skip_blank();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == ')' || c == ',' || c == '.' || c == '#' ||
          std::isspace(static_cast<unsigned char>(c))) {
        break;
      }
      ++pos_;
    }
    if (pos_ == start) {
      throw InputError("line " + std::to_string(line_) + ": expected " + std::string(what));
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_blank();
    if (peek() != c) {
      throw InputError("line " + std::to_string(line_) + ": expected '" + std::string(1, c) +
                       "'");
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::uint32_t parse_nat(const std::string& tok, std::size_t line) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw InputError("line " + std::to_string(line) + ": '" + tok + "' is not a natural number");
  }
  return value;
}

}  // namespace

Straf parse_straf(std::string_view text, const ParseOptions& opts) {
  StrafBuilder builder;
  builder.aggregator(opts.aggregator).allow_zero_strength(opts.allow_zero_strength);
  FactScanner scanner(text);
  while (auto fact = scanner.next()) {
    const auto where = "line " + std::to_string(fact->line) + ": ";
    try {
      if (fact->name == "arg") {
        if (fact->args.size() != 1) throw InputError("arg takes one id");
        builder.add_argument(fact->args[0]);
      } else if (fact->name == "att") {
        if (fact->args.size() != 2) throw InputError("att takes two ids");
        builder.add_attack(fact->args[0], fact->args[1]);
      } else if (fact->name == "str") {
        if (fact->args.size() != 2) throw InputError("str takes an id and a strength");
        builder.set_strength(fact->args[0], parse_nat(fact->args[1], fact->line));
      } else {
        throw InputError("unknown predicate '" + fact->name + "'");
      }
    } catch (const InputError& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw InputError(where + msg);
    }
  }
  return builder.build();
}

Straf load_straf(const std::filesystem::path& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_straf(buf.str(), opts);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string serialize_straf(const Straf& straf) {
  std::string out;
  for (const auto& id : straf.ids()) {
    out += "arg(" + id + ").\n";
  }
  for (auto [f, t] : straf.attacks()) {
    out += "att(" + straf.id_of(f) + "," + straf.id_of(t) + ").\n";
  }
  for (ArgIndex i = 0; i < straf.arg_count(); ++i) {
    out += "str(" + straf.id_of(i) + "," + std::to_string(straf.strength(i)) + ").\n";
  }
  return out;
}

void save_straf(const Straf& straf, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << serialize_straf(straf);
}

}  // namespace straf
