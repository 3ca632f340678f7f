#pragma once

// Tokenizer for Java-syntax source. Comments are kept on a side channel so
// the parser never sees them; LOC counting and comment attachment use it.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ooscan {

enum class TokenKind {
  Identifier,
  Keyword,
  IntegerLiteral,
  FloatingLiteral,
  CharLiteral,
  StringLiteral,
  TextBlock,
  Operator,  // operators and separators
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  std::uint32_t offset = 0;  // byte offset of the first character
  std::uint32_t line = 1;
  std::uint32_t column = 1;
  std::int32_t match = -1;  // index of the matching bracket, for ( ) [ ] { }

  std::uint32_t end_offset() const { return offset + static_cast<std::uint32_t>(text.size()); }
  bool is(std::string_view op) const {
    return (kind == TokenKind::Operator || kind == TokenKind::Keyword) && text == op;
  }
};

enum class CommentKind { Line, Block, Doc };

struct Comment {
  CommentKind kind = CommentKind::Line;
  std::string_view raw;  // including delimiters
  std::uint32_t offset = 0;
  std::uint32_t line = 1;
};

struct LexError {
  std::uint32_t line = 1;
  std::uint32_t column = 1;
  std::string message;
};

struct LexResult {
  std::vector<Token> tokens;  // always terminated by an End token
  std::vector<Comment> comments;
  std::vector<LexError> errors;
  std::size_t line_count_total = 0;
  std::size_t line_count_code = 0;
};

/// Tokenizes `source`. The returned views point into `source`, which must
/// outlive the result. Bracket matching is filled in when brackets balance;
/// an imbalance is reported as a LexError.
LexResult lex(std::string_view source);

bool is_java_keyword(std::string_view word);

/// Comment content with delimiters and leading '*' decorations stripped and
/// whitespace collapsed to single spaces.
std::string comment_text(const Comment& comment);

}  // namespace ooscan
