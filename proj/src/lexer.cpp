#include "ooscan/lexer.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace ooscan {

namespace {

const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> words = {
      "abstract", "assert",     "boolean",   "break",     "byte",      "case",     "catch",
      "char",     "class",      "const",     "continue",  "default",   "do",       "double",
      "else",     "enum",       "extends",   "final",     "finally",   "float",    "for",
      "goto",     "if",         "implements", "import",   "instanceof", "int",     "interface",
      "long",     "native",     "new",       "package",   "private",   "protected", "public",
      "return",   "short",      "static",    "strictfp",  "super",     "switch",   "synchronized",
      "this",     "throw",      "throws",    "transient", "try",       "void",     "volatile",
      "while",    "true",       "false",     "null",
  };
  return words;
}

// Longest first. '>>' and '>>>' are deliberately absent: the parser joins
// adjacent '>' tokens so that nested generics close correctly.
constexpr std::array<std::string_view, 38> kOperators = {
    ">>>=", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=",   "+=",  "-=",  "*=",  "/=", "&=", "|=", "^=", "%=", "<<", "(",  ")",  "{",
    "}",    "[",   "]",   ";",   ",",  ".",  "@",  "=",  ">",  "<",  "!",  "~",
};
constexpr std::string_view kSingleOperators = "?:+-*/&|^%";

bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}
bool ident_part(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_hex(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  LexResult run() {
    while (pos_ < src_.size()) {
      const auto c = static_cast<unsigned char>(src_[pos_]);
      if (c == '\n') {
        advance(1);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        advance(1);
      } else if (c == '/' && peek(1) == '/') {
        line_comment();
      } else if (c == '/' && peek(1) == '*') {
        block_comment();
      } else if (ident_start(c)) {
        identifier();
      } else if (is_digit(c) || (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
        number();
      } else if (c == '"') {
        string_literal();
      } else if (c == '\'') {
        char_literal();
      } else {
        op();
      }
    }
    Token end;
    end.kind = TokenKind::End;
    end.offset = static_cast<std::uint32_t>(src_.size());
    end.text = src_.substr(src_.size());
    end.line = line_;
    end.column = column_;
    out_.tokens.push_back(end);
    match_brackets();
    count_lines();
    return std::move(out_);
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void error(std::uint32_t line, std::uint32_t column, std::string message) {
    out_.errors.push_back({line, column, std::move(message)});
  }

  void emit(TokenKind kind, std::size_t begin, std::uint32_t line, std::uint32_t column) {
    Token t;
    t.kind = kind;
    t.text = src_.substr(begin, pos_ - begin);
    t.offset = static_cast<std::uint32_t>(begin);
    t.line = line;
    t.column = column;
    out_.tokens.push_back(t);
  }

  void line_comment() {
    const auto begin = pos_;
    const auto line = line_;
    while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
    out_.comments.push_back({CommentKind::Line, src_.substr(begin, pos_ - begin),
                             static_cast<std::uint32_t>(begin), line});
  }

  void block_comment() {
    const auto begin = pos_;
    const auto line = line_;
    const auto column = column_;
    const auto kind =
        (peek(2) == '*' && peek(3) != '/') ? CommentKind::Doc : CommentKind::Block;
    advance(2);
    while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) advance(1);
    if (pos_ >= src_.size()) {
      error(line, column, "unterminated comment");
      return;
    }
    advance(2);
    out_.comments.push_back(
        {kind, src_.substr(begin, pos_ - begin), static_cast<std::uint32_t>(begin), line});
  }

  void identifier() {
    const auto begin = pos_;
    const auto line = line_;
    const auto column = column_;
    while (pos_ < src_.size() && ident_part(static_cast<unsigned char>(src_[pos_]))) advance(1);
    const auto word = src_.substr(begin, pos_ - begin);
    emit(is_java_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, begin, line, column);
  }

  void number() {
    const auto begin = pos_;
    const auto line = line_;
    const auto column = column_;
    bool floating = false;
    auto digits = [&](auto pred) {
      while (pos_ < src_.size() &&
             (pred(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        advance(1);
      }
    };
    if (src_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance(2);
      digits(is_hex);
      if (pos_ < src_.size() && src_[pos_] == '.') {
        floating = true;
        advance(1);
        digits(is_hex);
      }
      if (pos_ < src_.size() && (src_[pos_] == 'p' || src_[pos_] == 'P')) {
        floating = true;
        advance(1);
        if (peek(0) == '+' || peek(0) == '-') advance(1);
        digits(is_digit);
      }
    } else if (src_[pos_] == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      advance(2);
      digits([](unsigned char c) { return c == '0' || c == '1'; });
    } else {
      digits(is_digit);
      if (pos_ < src_.size() && src_[pos_] == '.' && peek(1) != '.') {
        const auto next = static_cast<unsigned char>(peek(1));
        const bool suffix_or_exp = next == 'e' || next == 'E' || next == 'f' || next == 'F' ||
                                   next == 'd' || next == 'D';
        if (is_digit(next) || suffix_or_exp || !ident_start(next)) {
          floating = true;
          advance(1);
          digits(is_digit);
        }
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        floating = true;
        advance(1);
        if (peek(0) == '+' || peek(0) == '-') advance(1);
        digits(is_digit);
      }
    }
    if (pos_ < src_.size()) {
      const char s = src_[pos_];
      if (s == 'l' || s == 'L') {
        advance(1);
      } else if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
        floating = true;
        advance(1);
      }
    }
    emit(floating ? TokenKind::FloatingLiteral : TokenKind::IntegerLiteral, begin, line, column);
  }

  void string_literal() {
    const auto begin = pos_;
    const auto line = line_;
    const auto column = column_;
    if (peek(1) == '"' && peek(2) == '"') {
      advance(3);
      while (pos_ < src_.size()) {
        if (src_[pos_] == '\\') {
          advance(2);
        } else if (src_[pos_] == '"' && peek(1) == '"' && peek(2) == '"') {
          advance(3);
          emit(TokenKind::TextBlock, begin, line, column);
          return;
        } else {
          advance(1);
        }
      }
      error(line, column, "unterminated text block");
      return;
    }
    advance(1);
    while (pos_ < src_.size() && src_[pos_] != '\n') {
      if (src_[pos_] == '\\') {
        advance(2);
      } else if (src_[pos_] == '"') {
        advance(1);
        emit(TokenKind::StringLiteral, begin, line, column);
        return;
      } else {
        advance(1);
      }
    }
    error(line, column, "unterminated string literal");
  }

  void char_literal() {
    const auto begin = pos_;
    const auto line = line_;
    const auto column = column_;
    advance(1);
    while (pos_ < src_.size() && src_[pos_] != '\n') {
      if (src_[pos_] == '\\') {
        advance(2);
      } else if (src_[pos_] == '\'') {
        advance(1);
        emit(TokenKind::CharLiteral, begin, line, column);
        return;
      } else {
        advance(1);
      }
    }
    error(line, column, "unterminated character literal");
  }

  void op() {
    const auto begin = pos_;
    const auto line = line_;
    const auto column = column_;
    const auto rest = src_.substr(pos_);
    for (const auto candidate : kOperators) {
      if (rest.starts_with(candidate)) {
        advance(candidate.size());
        emit(TokenKind::Operator, begin, line, column);
        return;
      }
    }
    if (kSingleOperators.find(src_[pos_]) != std::string_view::npos) {
      advance(1);
      emit(TokenKind::Operator, begin, line, column);
      return;
    }
    error(line, column, std::string("unexpected character '") + src_[pos_] + "'");
    advance(1);
  }

  void match_brackets() {
    std::vector<std::int32_t> stack;
    auto opener_for = [](std::string_view close) -> std::string_view {
      if (close == ")") return "(";
      if (close == "]") return "[";
      return "{";
    };
    auto& toks = out_.tokens;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      const auto& t = toks[i];
      if (t.kind != TokenKind::Operator) continue;
      if (t.text == "(" || t.text == "[" || t.text == "{") {
        stack.push_back(static_cast<std::int32_t>(i));
      } else if (t.text == ")" || t.text == "]" || t.text == "}") {
        if (stack.empty() || toks[static_cast<std::size_t>(stack.back())].text != opener_for(t.text)) {
          error(t.line, t.column, "unbalanced '" + std::string(t.text) + "'");
          return;
        }
        const auto open = static_cast<std::size_t>(stack.back());
        stack.pop_back();
        toks[open].match = static_cast<std::int32_t>(i);
        toks[i].match = static_cast<std::int32_t>(open);
      }
    }
    if (!stack.empty()) {
      const auto& t = toks[static_cast<std::size_t>(stack.back())];
      error(t.line, t.column, "unclosed '" + std::string(t.text) + "'");
    }
  }

  void count_lines() {
    if (src_.empty()) return;
    std::size_t total = static_cast<std::size_t>(std::count(src_.begin(), src_.end(), '\n'));
    if (src_.back() != '\n') ++total;
    out_.line_count_total = total;
    std::vector<bool> code(total + 2, false);
    for (const auto& t : out_.tokens) {
      if (t.kind == TokenKind::End) continue;
      const auto span = static_cast<std::uint32_t>(std::count(t.text.begin(), t.text.end(), '\n'));
      for (std::uint32_t l = t.line; l <= t.line + span && l < code.size(); ++l) code[l] = true;
    }
    out_.line_count_code = static_cast<std::size_t>(std::count(code.begin(), code.end(), true));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t column_ = 1;
  LexResult out_;
};

}  // namespace

bool is_java_keyword(std::string_view word) { return keywords().contains(word); }

LexResult lex(std::string_view source) { return Lexer(source).run(); }

std::string comment_text(const Comment& comment) {
  std::string_view body = comment.raw;
  if (comment.kind == CommentKind::Line) {
    while (body.starts_with('/')) body.remove_prefix(1);
  } else {
    body.remove_prefix(2);
    if (body.ends_with("*/")) body.remove_suffix(2);
  }

  std::string out;
  bool pending_space = false;
  std::size_t line_start = 0;
  while (line_start <= body.size()) {
    auto line_end = body.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = body.size();
    auto line = body.substr(line_start, line_end - line_start);
    // Drop the decoration of javadoc-style continuation lines.
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    while (i < line.size() && line[i] == '*') ++i;
    line.remove_prefix(i);
    for (const char ch : line) {
      if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\f') {
        pending_space = !out.empty();
      } else {
        if (pending_space) out += ' ';
        pending_space = false;
        out += ch;
      }
    }
    pending_space = !out.empty();
    line_start = line_end + 1;
  }
  while (!out.empty() && out.back() == '*') out.pop_back();
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace ooscan
