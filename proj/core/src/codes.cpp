#include "ilm/codes.hpp"

#include <algorithm>
#include <thread>

#include "ilm/errors.hpp"

namespace ilm {

Code::Code(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw PreconditionError("code must have at least one symbol");
}

Code Code::negated() const {
  std::vector<Symbol> s(symbols_.size());
  std::transform(symbols_.begin(), symbols_.end(), s.begin(), negate);
  return Code(std::move(s));
}

Code Code::reversed() const { return Code(std::vector<Symbol>(symbols_.rbegin(), symbols_.rend())); }

std::string to_string(Symbol s) {
  switch (s) {
    case Symbol::SmallPlus: return "a+";
    case Symbol::SmallMinus: return "a-";
    case Symbol::LargePlus: return "A+";
    case Symbol::LargeMinus: return "A-";
  }
  return "?";
}

std::string to_string(const Code& c) {
  std::string out;
  for (int i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += to_string(c[i]);
  }
  return out;
}

Code parse_code(std::string_view text) {
  std::vector<Symbol> symbols;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  while (true) {
    skip_ws();
    if (pos + 2 > text.size()) throw PreconditionError("malformed code: '" + std::string(text) + "'");
    const char amp = text[pos];
    const char sgn = text[pos + 1];
    if ((amp != 'a' && amp != 'A') || (sgn != '+' && sgn != '-')) {
      throw PreconditionError("malformed code token in '" + std::string(text) + "'");
    }
    int k = (amp == 'A' ? 2 : 0) + (sgn == '-' ? 1 : 0);
    symbols.push_back(static_cast<Symbol>(k));
    pos += 2;
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != ',') throw PreconditionError("expected ',' in code '" + std::string(text) + "'");
    ++pos;
  }
  return Code(std::move(symbols));
}

std::vector<Code> equivalent_set(const Code& c) {
  std::vector<Code> out{c, c.negated(), c.reversed(), c.reversed().negated()};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Code canonicalize(const Code& c) { return equivalent_set(c).front(); }

bool is_canonical(const Code& c) {
  const Code r = c.reversed();
  return c <= c.negated() && c <= r && c <= r.negated();
}

Code code_from_index(std::uint64_t index, int n) {
  std::vector<Symbol> s(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = static_cast<Symbol>(index & 3u);
    index >>= 2;
  }
  return Code(std::move(s));
}

std::vector<Code> enumerate_irreducible(int n, int n_max, unsigned threads) {
  if (n < 1 || n > n_max) {
    throw PreconditionError("code length must lie in [1, " + std::to_string(n_max) + "]");
  }
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  threads = std::max(1u, std::min<unsigned>(threads, 64));
  std::vector<std::vector<Code>> parts(threads);
  auto work = [&](unsigned t) {
    const std::uint64_t lo = total * t / threads;
    const std::uint64_t hi = total * (t + 1) / threads;
    for (std::uint64_t i = lo; i < hi; ++i) {
      Code c = code_from_index(i, n);
      if (is_canonical(c)) parts[t].push_back(std::move(c));
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::vector<Code> out;
  for (auto& part : parts) {
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_irreducible(int n) {
  if (n < 1) throw PreconditionError("code length must be positive");
  if (n > 31) throw PreconditionError("code length too large for a 64-bit count");
  const int k = n / 2;
  const std::uint64_t four_k = std::uint64_t{1} << (2 * k);
  const std::uint64_t sixteen_k = four_k * four_k;
  if (n % 2 == 1) return sixteen_k + four_k;
  return (sixteen_k + 2 * four_k) / 4;
}

Code expand_stacked(const StackedCode& s) {
  if (s.n < 0 || s.m < 0 || s.n + s.m < 1) throw PreconditionError("stacked code needs n, m >= 0, n+m >= 1");
  std::vector<Symbol> out(static_cast<std::size_t>(s.n), Symbol::LargePlus);
  Symbol small = s.variant == StackedCode::Variant::Plus ? Symbol::SmallPlus : Symbol::SmallMinus;
  for (int i = 0; i < s.m; ++i) {
    out.push_back(small);
    small = negate(small);
  }
  return Code(std::move(out));
}

int flips(const Code& c) {
  int count = 0;
  for (int i = 1; i < c.size(); ++i) count += sign(c[i]) != sign(c[i - 1]);
  return count;
}

int small_count(const Code& c) {
  return static_cast<int>(std::count_if(c.symbols().begin(), c.symbols().end(), is_small));
}

std::string family_name(const Code& c) {
  const Code canon = canonicalize(c);
  const int n = c.size();
  auto matches = [&](const StackedCode& s) { return canonicalize(expand_stacked(s)) == canon; };
  if (matches({n, 0, StackedCode::Variant::Plus})) return "A_A";
  if (matches({0, n, StackedCode::Variant::Plus})) return "A_a";
  for (int big = n - 1; big >= 1; --big) {
    const int m = n - big;
    if (matches({big, m, StackedCode::Variant::Minus})) {
      return "A-(" + std::to_string(big) + "," + std::to_string(m) + ")";
    }
    if (matches({big, m, StackedCode::Variant::Plus})) {
      return "A+(" + std::to_string(big) + "," + std::to_string(m) + ")";
    }
  }
  return to_string(canon);
}

}  // namespace ilm
