#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ksmin/error.hpp"

// Internal line tokenizer shared by the .kripke and .kgram parsers.
namespace ksmin::detail {

struct Token {
  std::string text;
  int column;  // 1-based
};

inline bool ident_head(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

inline bool ident_tail(char c) {
  return ident_head(c) || (c >= '0' && c <= '9');
}

[[noreturn]] inline void syntax_fail(int lineno, int col, const std::string& msg) {
  throw error(errc::syntax,
              "line " + std::to_string(lineno) + ", column " + std::to_string(col) + ": " + msg);
}

// Tokens are identifiers (letters, digits, '_', '.'), ':' and '->'.
// '#' starts a comment.
inline std::vector<Token> tokenize_line(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (c == ':') {
      out.push_back({":", col});
      ++i;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", col});
      i += 2;
    } else if (ident_tail(c) || c == '.') {
      std::size_t j = i;
      while (j < line.size() && (ident_tail(line[j]) || line[j] == '.')) ++j;
      out.push_back({std::string(line.substr(i, j - i)), col});
      i = j;
    } else {
      syntax_fail(lineno, col, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

}  // namespace ksmin::detail
