#ifndef STREET_DECIMAL_HPP_
#define STREET_DECIMAL_HPP_

#include <cctype>
#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace street {

// Exact decimal number kept in canonical text form: optional '-', integer
// digits without leading zeros, and a fraction without trailing zeros.
// "12", "12.0" and "012" normalize alike; thousands commas are dropped.
class Decimal {
 public:
  Decimal() : canonical_("0") {}

  // Accepts [+-]?digits[,ddd]*(.digits)? ; returns nullopt otherwise.
  static std::optional<Decimal> Parse(std::string_view literal) {
    std::size_t i = 0;
    bool negative = false;
    if (i < literal.size() && (literal[i] == '-' || literal[i] == '+')) {
      negative = literal[i] == '-';
      ++i;
    }
    std::string integer;
    std::string fraction;
    bool seen_digit = false;
    bool in_fraction = false;
    for (; i < literal.size(); ++i) {
      const char c = literal[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        (in_fraction ? fraction : integer).push_back(c);
        seen_digit = true;
      } else if (c == ',' && !in_fraction && seen_digit) {
        continue;
      } else if (c == '.' && !in_fraction) {
        in_fraction = true;
      } else {
        return std::nullopt;
      }
    }
    if (!seen_digit) return std::nullopt;
    const auto first = integer.find_first_not_of('0');
    integer = first == std::string::npos ? "0" : integer.substr(first);
    const auto last = fraction.find_last_not_of('0');
    fraction = last == std::string::npos ? "" : fraction.substr(0, last + 1);
    Decimal out;
    out.canonical_ = integer;
    if (!fraction.empty()) out.canonical_ += "." + fraction;
    if (negative && out.canonical_ != "0") out.canonical_.insert(0, "-");
    return out;
  }

  const std::string& str() const { return canonical_; }
  double ToDouble() const { return std::stod(canonical_); }

  bool operator==(const Decimal&) const = default;
  // Canonical-text order; consistent with equality, not numeric order.
  std::strong_ordering operator<=>(const Decimal& other) const {
    return canonical_ <=> other.canonical_;
  }

 private:
  std::string canonical_;
};

inline std::ostream& operator<<(std::ostream& os, const Decimal& d) {
  return os << d.str();
}

}  // namespace street

#endif  // STREET_DECIMAL_HPP_
