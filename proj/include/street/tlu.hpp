#ifndef STREET_TLU_HPP_
#define STREET_TLU_HPP_

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace street {

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offset into the raw text
  std::size_t end = 0;    // one past the last byte
};

struct TokenizedText {
  std::string raw;
  std::vector<Token> tokens;
};

// Inclusive token-index range of one textual logical unit.
struct TluSpan {
  std::size_t first_token = 0;
  std::size_t last_token = 0;

  bool operator==(const TluSpan&) const = default;
};

namespace tlu_internal {

inline bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool IsDigit(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

// ASCII punctuation is tokenized one mark at a time. Bytes >= 0x80 belong to
// words, so UTF-8 sequences are never split.
inline bool IsPunct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u) != 0 && c != '_';
}

}  // namespace tlu_internal

// Whitespace-and-punctuation tokenizer. A '.' or ',' between two digits stays
// inside the number ("0.6", "1,000").
inline TokenizedText Tokenize(std::string_view raw) {
  using tlu_internal::IsDigit;
  using tlu_internal::IsPunct;
  using tlu_internal::IsSpace;
  TokenizedText out{std::string(raw), {}};
  const std::size_t n = raw.size();
  std::size_t i = 0;
  while (i < n) {
    if (IsSpace(raw[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    if (IsPunct(raw[i])) {
      ++i;
    } else {
      while (i < n && !IsSpace(raw[i])) {
        if (IsPunct(raw[i])) {
          const bool numeric_joint = (raw[i] == '.' || raw[i] == ',') &&
                                     i > begin && IsDigit(raw[i - 1]) &&
                                     i + 1 < n && IsDigit(raw[i + 1]);
          if (!numeric_joint) break;
        }
        ++i;
      }
    }
    out.tokens.push_back(Token{std::string(raw.substr(begin, i - begin)),
                               begin, i});
  }
  return out;
}

namespace tlu_internal {

inline constexpr std::size_t kMinSpanTokens = 5;

inline bool SpaceAfter(const TokenizedText& text, std::size_t i) {
  const std::size_t end = text.tokens[i].end;
  return end < text.raw.size() && IsSpace(text.raw[end]);
}

inline bool SpaceBefore(const TokenizedText& text, std::size_t i) {
  const std::size_t begin = text.tokens[i].begin;
  return begin > 0 && IsSpace(text.raw[begin - 1]);
}

// ". ", "! ", "? "
inline bool IsHardBoundary(const TokenizedText& text, std::size_t i) {
  const std::string& t = text.tokens[i].text;
  return (t == "." || t == "!" || t == "?") && SpaceAfter(text, i);
}

// ", ", " and ", " then " (lowercase, word-bounded).
inline bool IsSoftBoundary(const TokenizedText& text, std::size_t i) {
  const std::string& t = text.tokens[i].text;
  if (t == ",") return SpaceAfter(text, i);
  if (t == "and" || t == "then") {
    return SpaceBefore(text, i) && SpaceAfter(text, i);
  }
  return false;
}

}  // namespace tlu_internal

// Splits a tokenized component into TLUs. Hard boundaries always close a span.
// A run of adjacent soft boundaries (", and then") closes a span only when the
// pending span, run included, holds at least five tokens and so does the
// remainder up to the next hard boundary. Separators stay with the span they
// close.
inline std::vector<TluSpan> ExtractTlus(const TokenizedText& text) {
  using tlu_internal::IsHardBoundary;
  using tlu_internal::IsSoftBoundary;
  using tlu_internal::kMinSpanTokens;
  std::vector<TluSpan> spans;
  const std::size_t n = text.tokens.size();
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    if (IsHardBoundary(text, i)) {
      spans.push_back({start, i});
      start = ++i;
      continue;
    }
    if (IsSoftBoundary(text, i)) {
      std::size_t run_end = i;
      while (run_end + 1 < n && IsSoftBoundary(text, run_end + 1)) ++run_end;
      std::size_t next_hard = run_end + 1;
      while (next_hard < n && !IsHardBoundary(text, next_hard)) ++next_hard;
      const std::size_t pending = run_end - start + 1;
      const std::size_t remainder =
          (next_hard < n ? next_hard + 1 : n) - (run_end + 1);
      if (pending >= kMinSpanTokens && remainder >= kMinSpanTokens) {
        spans.push_back({start, run_end});
        start = run_end + 1;
      }
      i = run_end + 1;
      continue;
    }
    ++i;
  }
  if (start < n) spans.push_back({start, n - 1});
  return spans;
}

// Raw text covered by a span, from its first token to its last.
inline std::string SpanText(const TokenizedText& text, const TluSpan& span) {
  const std::size_t begin = text.tokens[span.first_token].begin;
  const std::size_t end = text.tokens[span.last_token].end;
  return text.raw.substr(begin, end - begin);
}

inline std::vector<std::string> SegmentTlus(std::string_view raw) {
  const TokenizedText text = Tokenize(raw);
  std::vector<std::string> out;
  for (const TluSpan& span : ExtractTlus(text)) {
    out.push_back(SpanText(text, span));
  }
  return out;
}

}  // namespace street

#endif  // STREET_TLU_HPP_
