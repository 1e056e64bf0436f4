#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ilm {

// Declaration order is the canonical symbol order.
enum class Symbol : std::uint8_t { SmallPlus = 0, SmallMinus = 1, LargePlus = 2, LargeMinus = 3 };

inline int sign(Symbol s) { return (static_cast<int>(s) & 1) ? -1 : 1; }
inline bool is_small(Symbol s) { return static_cast<int>(s) < 2; }
inline Symbol negate(Symbol s) { return static_cast<Symbol>(static_cast<int>(s) ^ 1); }

class Code {
 public:
  Code() = default;
  explicit Code(std::vector<Symbol> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  Symbol operator[](int i) const { return symbols_[static_cast<std::size_t>(i)]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  Code negated() const;
  Code reversed() const;

  friend auto operator<=>(const Code&, const Code&) = default;
  friend bool operator==(const Code&, const Code&) = default;

 private:
  std::vector<Symbol> symbols_;
};

std::string to_string(Symbol s);
std::string to_string(const Code& c);

// Grammar: token ("," token)*, token := ("a"|"A")("+"|"-"). Whitespace around tokens is ignored.
Code parse_code(std::string_view text);

std::vector<Code> equivalent_set(const Code& c);
Code canonicalize(const Code& c);
bool is_canonical(const Code& c);

// Base-4 digits of `index`, most significant first, as a length-N code.
Code code_from_index(std::uint64_t index, int n);

std::vector<Code> enumerate_irreducible(int n, int n_max = 10, unsigned threads = 1);
std::uint64_t count_irreducible(int n);

struct StackedCode {
  enum class Variant { Plus, Minus };
  int n = 0;
  int m = 0;
  Variant variant = Variant::Plus;
};

Code expand_stacked(const StackedCode& s);

int flips(const Code& c);
int small_count(const Code& c);

// Short family name ("A_A", "A_a", "A-(2,1)", "A+(1,2)") if the class of `c`
// contains a stacked code, otherwise the code text.
std::string family_name(const Code& c);

}  // namespace ilm
