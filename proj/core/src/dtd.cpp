#include "xmlstream/dtd.hpp"

#include <algorithm>
#include <sstream>

#include "xmlstream/error.hpp"

namespace xmlstream {

Regex Regex::concat(std::vector<Regex> parts) {
  if (parts.empty()) return epsilon();
  if (parts.size() == 1) return std::move(parts.front());
  return Regex{Op::Concat, {}, std::move(parts)};
}

Regex Regex::alt(std::vector<Regex> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  return Regex{Op::Alt, {}, std::move(parts)};
}

namespace {

int precedence(Regex::Op op) {
  switch (op) {
    case Regex::Op::Alt: return 0;
    case Regex::Op::Concat: return 1;
    default: return 2;
  }
}

void emit(const Regex& r, int parent_prec, std::string& out) {
  auto add = [&](std::string_view s) {
    if (!out.empty()) out.push_back(' ');
    out.append(s);
  };
  bool wrap = precedence(r.op) < parent_prec;
  if (wrap) add("(");
  switch (r.op) {
    case Regex::Op::Epsilon: add("~"); break;
    case Regex::Op::Symbol: add(r.symbol.name()); break;
    case Regex::Op::Concat:
      for (const auto& p : r.operands) emit(p, 2, out);
      break;
    case Regex::Op::Alt:
      for (std::size_t i = 0; i < r.operands.size(); ++i) {
        if (i) add("|");
        emit(r.operands[i], 1, out);
      }
      break;
    case Regex::Op::Star:
    case Regex::Op::Plus:
    case Regex::Op::Optional:
      emit(r.operands.front(), 3, out);
      add(r.op == Regex::Op::Star ? "*" : r.op == Regex::Op::Plus ? "+" : "?");
      break;
  }
  if (wrap) add(")");
}

class RegexParser {
 public:
  explicit RegexParser(std::string_view text) {
    // Operators split tokens even without surrounding spaces: "a* (b|c)?" works.
    std::string tok;
    auto flush = [&] {
      if (!tok.empty()) tokens_.push_back(std::move(tok));
      tok.clear();
    };
    for (char c : text) {
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        flush();
      } else if (std::string_view("|()*+?~").find(c) != std::string_view::npos) {
        flush();
        tokens_.emplace_back(1, c);
      } else {
        tok += c;
      }
    }
    flush();
  }

  Regex parse() {
    if (tokens_.empty()) fail("empty expression");
    Regex r = alternation();
    if (at_ < tokens_.size()) fail("unexpected '" + tokens_[at_] + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const { throw Error(ErrorCode::SyntaxError, why); }

  bool peek_is(std::string_view s) const { return at_ < tokens_.size() && tokens_[at_] == s; }

  Regex alternation() {
    std::vector<Regex> parts{concatenation()};
    while (peek_is("|")) {
      ++at_;
      parts.push_back(concatenation());
    }
    return Regex::alt(std::move(parts));
  }

  Regex concatenation() {
    std::vector<Regex> parts;
    while (at_ < tokens_.size() && !peek_is("|") && !peek_is(")")) parts.push_back(postfix());
    if (parts.empty()) fail("empty alternative");
    return Regex::concat(std::move(parts));
  }

  Regex postfix() {
    Regex r = atom();
    while (peek_is("*") || peek_is("+") || peek_is("?")) {
      const std::string& op = tokens_[at_++];
      if (op == "*") r = Regex::star(std::move(r));
      if (op == "+") r = Regex::plus(std::move(r));
      if (op == "?") r = Regex::optional(std::move(r));
    }
    return r;
  }

  Regex atom() {
    if (at_ >= tokens_.size()) fail("unexpected end of expression");
    const std::string& tok = tokens_[at_++];
    if (tok == "(") {
      Regex r = alternation();
      if (!peek_is(")")) fail("missing ')'");
      ++at_;
      return r;
    }
    if (tok == "~") return Regex::epsilon();
    if (!is_valid_label_name(tok)) fail("bad token '" + tok + "'");
    return Regex::sym(Label::of(tok));
  }

  std::vector<std::string> tokens_;
  std::size_t at_ = 0;
};

}  // namespace

std::string Regex::to_text() const {
  std::string out;
  emit(*this, 0, out);
  return out;
}

void Regex::collect_symbols(std::vector<Label>& out) const {
  if (op == Op::Symbol) out.push_back(symbol);
  for (const auto& r : operands) r.collect_symbols(out);
}

Regex parse_regex(std::string_view text) { return RegexParser(text).parse(); }

const Regex* Dtd::rule(Label l) const {
  auto it = rules.find(l);
  return it == rules.end() ? nullptr : &it->second;
}

void Dtd::add_rule(Label l, Regex r) {
  if (!rules.emplace(l, std::move(r)).second) {
    throw Error(ErrorCode::DuplicateRule, "duplicate rule for '" + l.str() + "'");
  }
  order.push_back(l);
}

std::string Dtd::to_text() const {
  std::string out = "#root " + root.str() + "\n";
  for (Label l : order) out += l.str() + " = " + rules.at(l).to_text() + "\n";
  return out;
}

Dtd parse_dtd(std::string_view text) {
  Dtd dtd;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_root = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    auto where = " (line " + std::to_string(line_no) + ")";
    if (!have_root) {
      std::istringstream hdr(line);
      std::string tag, name, extra;
      hdr >> tag >> name;
      if (tag != "#root" || !is_valid_label_name(name) || (hdr >> extra)) {
        throw Error(ErrorCode::SyntaxError, "expected '#root <label>'" + where);
      }
      dtd.root = Label::of(name);
      have_root = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::SyntaxError, "expected '<label> = <regex>'" + where);
    std::string name = line.substr(0, eq);
    while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.pop_back();
    if (!is_valid_label_name(name)) throw Error(ErrorCode::SyntaxError, "bad rule label '" + name + "'" + where);
    try {
      dtd.add_rule(Label::of(name), parse_regex(std::string_view(line).substr(eq + 1)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SyntaxError) {
        std::string msg = e.what();
        throw Error(ErrorCode::SyntaxError, msg.substr(msg.find(": ") + 2) + where);
      }
      throw;
    }
  }
  if (!have_root) throw Error(ErrorCode::SyntaxError, "missing '#root' line");
  if (!dtd.rule(dtd.root)) throw Error(ErrorCode::UnknownLabel, "root label '" + dtd.root.str() + "' has no rule");
  for (Label l : dtd.order) {
    std::vector<Label> used;
    dtd.rules.at(l).collect_symbols(used);
    for (Label u : used) {
      if (!dtd.rule(u)) {
        throw Error(ErrorCode::UnknownLabel, "label '" + u.str() + "' in rule for '" + l.str() + "' has no rule");
      }
    }
  }
  return dtd;
}

Dtd with_bottom_rule(const Dtd& dtd) {
  Dtd out = dtd;
  if (!out.rule(Label::bottom())) out.add_rule(Label::bottom(), Regex::epsilon());
  return out;
}

}  // namespace xmlstream
