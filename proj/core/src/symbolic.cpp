#include "gms/symbolic.hpp"

#include <algorithm>
#include <stdexcept>

namespace gms {

constexpr std::array<std::array<int, 3>, 3> Adjacency::matrix;

const std::vector<Symbol>& Adjacency::successors(Symbol s) {
  static const std::vector<Symbol> from1{1, 3};
  static const std::vector<Symbol> from2{1, 3};
  static const std::vector<Symbol> from3{2};
  switch (s) {
    case 1: return from1;
    case 2: return from2;
    case 3: return from3;
    default: throw std::invalid_argument("symbol out of range");
  }
}

const std::vector<Symbol>& Adjacency::roots() {
  static const std::vector<Symbol> r{1, 3, 2};
  return r;
}

bool Adjacency::mixing(int max_power) {
  std::array<std::array<int, 3>, 3> p = matrix;
  for (int k = 1; k <= max_power; ++k) {
    bool positive = true;
    for (auto& row : p)
      for (int v : row)
        if (v == 0) positive = false;
    if (positive) return true;
    std::array<std::array<int, 3>, 3> q{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int s = 0;
        for (int l = 0; l < 3; ++l) s += (p[i][l] && matrix[l][j]) ? 1 : 0;
        q[i][j] = s > 0 ? 1 : 0;
      }
    p = q;
  }
  return false;
}

Word::Word(std::vector<uint8_t> syms) : syms_(std::move(syms)) {
  for (uint8_t s : syms_)
    if (s < 1 || s > 3) throw std::invalid_argument("Word: symbol out of range");
}

Word::Word(std::string_view digits) {
  syms_.reserve(digits.size());
  for (char c : digits) {
    if (c < '1' || c > '3') throw std::invalid_argument("Word: digit out of range");
    syms_.push_back(static_cast<uint8_t>(c - '0'));
  }
}

bool Word::admissible() const {
  for (std::size_t i = 0; i + 1 < syms_.size(); ++i)
    if (!Adjacency::allowed(syms_[i], syms_[i + 1])) return false;
  return !syms_.empty();
}

Word Word::prefix(std::size_t n) const {
  return Word(std::vector<uint8_t>(syms_.begin(), syms_.begin() + std::min(n, syms_.size())));
}

Word Word::suffix_from(std::size_t i) const {
  return Word(std::vector<uint8_t>(syms_.begin() + std::min(i, syms_.size()), syms_.end()));
}

Word Word::concat(const Word& tail) const {
  std::vector<uint8_t> v(syms_);
  for (std::size_t i = 0; i < tail.size(); ++i) v.push_back(static_cast<uint8_t>(tail.at(i)));
  return Word(std::move(v));
}

std::string Word::str() const {
  std::string s;
  s.reserve(syms_.size());
  for (uint8_t c : syms_) s.push_back(static_cast<char>('0' + c));
  return s;
}

Interval partition_interval(Symbol s) {
  const FieldElement one(1);
  switch (s) {
    case 1: return {FieldElement(0), golden::inv_phi2()};
    case 2: return {golden::inv_phi(), one};
    case 3: return {golden::inv_phi2(), golden::inv_phi()};
    default: throw std::invalid_argument("symbol out of range");
  }
}

Symbol symbol_of(const FieldElement& x) {
  if (x.sign() < 0 || x >= FieldElement(1)) throw std::domain_error("symbol_of: x outside [0,1)");
  if (x < golden::inv_phi2()) return 1;
  if (x < golden::inv_phi()) return 3;
  return 2;
}

Interval cylinder_of(const Word& w) {
  if (!w.admissible()) throw std::invalid_argument("cylinder_of: inadmissible word");
  // Backward pass through the inverse branches: symbol 2 maps y -> (y+1)/phi,
  // symbols 1 and 3 map y -> y/phi.
  Interval iv = partition_interval(w.back());
  const FieldElement inv = golden::inv_phi();
  for (std::size_t k = w.size() - 1; k-- > 0;) {
    Symbol s = w.at(k);
    if (s == 2) {
      iv.lo = (iv.lo + FieldElement(1)) * inv;
      iv.hi = (iv.hi + FieldElement(1)) * inv;
    } else {
      iv.lo = iv.lo * inv;
      iv.hi = iv.hi * inv;
    }
  }
  return iv;
}

namespace {
void enumerate_rec(Word& w, int remaining, std::vector<Word>& out) {
  if (remaining == 0) {
    out.push_back(w);
    return;
  }
  for (Symbol s : Adjacency::successors(w.back())) {
    w.push_back(s);
    enumerate_rec(w, remaining - 1, out);
    w = w.prefix(w.size() - 1);
  }
}
}  // namespace

std::vector<Word> enumerate_words(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_words: n >= 1 required");
  std::vector<Word> out;
  for (Symbol r : Adjacency::roots()) {
    Word w(std::string(1, static_cast<char>('0' + r)));
    enumerate_rec(w, n - 1, out);
  }
  return out;
}

long count_words(int n) {
  if (n < 1) throw std::invalid_argument("count_words: n >= 1 required");
  // counts per current symbol
  std::array<long, 3> c{1, 1, 1};
  for (int k = 1; k < n; ++k) {
    std::array<long, 3> nc{};
    for (int s = 1; s <= 3; ++s)
      for (Symbol t : Adjacency::successors(s)) nc[t - 1] += c[s - 1];
    c = nc;
  }
  return c[0] + c[1] + c[2];
}

bool precede(const Word& w, const Word& z) {
  if (!w.admissible() || !z.admissible()) throw std::invalid_argument("precede: inadmissible word");
  std::size_t n = std::min(w.size(), z.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (w.at(i) != z.at(i)) return Adjacency::rank(w.at(i)) < Adjacency::rank(z.at(i));
  }
  return false;  // equal or prefix: not strictly left
}

namespace {
// Largest admissible continuation: from 1 or 2 pick 3, from 3 pick 2.
Symbol max_successor(Symbol s) { return s == 3 ? 2 : 3; }
Symbol min_successor(Symbol s) { return s == 3 ? 2 : 1; }

const std::vector<Symbol>& options_at(const Word& w, std::size_t i) {
  return i == 0 ? Adjacency::roots() : Adjacency::successors(w.at(i - 1));
}
}  // namespace

Word predecessor_same_length(const Word& w) {
  if (!w.admissible()) throw std::invalid_argument("predecessor: inadmissible word");
  std::vector<uint8_t> syms;
  for (std::size_t i = 0; i < w.size(); ++i) syms.push_back(static_cast<uint8_t>(w.at(i)));
  for (std::size_t i = w.size(); i-- > 0;) {
    const auto& opts = options_at(w, i);
    auto it = std::find(opts.begin(), opts.end(), static_cast<Symbol>(syms[i]));
    if (it != opts.begin()) {
      syms[i] = static_cast<uint8_t>(*(it - 1));
      for (std::size_t k = i + 1; k < syms.size(); ++k)
        syms[k] = static_cast<uint8_t>(max_successor(syms[k - 1]));
      return Word(std::move(syms));
    }
  }
  // Minimal word: wrap to the maximal one (start 2, then alternate 3,2,...).
  syms[0] = 2;
  for (std::size_t k = 1; k < syms.size(); ++k)
    syms[k] = static_cast<uint8_t>(max_successor(syms[k - 1]));
  return Word(std::move(syms));
}

Word successor_same_length(const Word& w) {
  if (!w.admissible()) throw std::invalid_argument("successor: inadmissible word");
  std::vector<uint8_t> syms;
  for (std::size_t i = 0; i < w.size(); ++i) syms.push_back(static_cast<uint8_t>(w.at(i)));
  for (std::size_t i = w.size(); i-- > 0;) {
    const auto& opts = options_at(w, i);
    auto it = std::find(opts.begin(), opts.end(), static_cast<Symbol>(syms[i]));
    if (it + 1 != opts.end()) {
      syms[i] = static_cast<uint8_t>(*(it + 1));
      for (std::size_t k = i + 1; k < syms.size(); ++k)
        syms[k] = static_cast<uint8_t>(min_successor(syms[k - 1]));
      return Word(std::move(syms));
    }
  }
  // Maximal word: wrap to the minimal one (all ones).
  for (auto& s : syms) s = 1;
  return Word(std::move(syms));
}

namespace {
Word repeat_then(std::string_view block, int reps, std::string_view tail) {
  std::string s;
  for (int i = 0; i < reps; ++i) s += block;
  s += tail;
  return Word(s);
}
}  // namespace

Word coupling_word_upper(int j) {
  if (j < 1) throw std::invalid_argument("coupling word: j >= 1 required");
  switch (j) {
    case 1: return Word("1");
    case 2: return Word("11");
    default:
      if (j % 2 == 1) return repeat_then("32", (j - 3) / 2, "132");
      return repeat_then("32", (j - 4) / 2, "3211");
  }
}

Word coupling_word_lower(int j) {
  if (j < 1) throw std::invalid_argument("coupling word: j >= 1 required");
  switch (j) {
    case 1: return Word("2");
    case 2: return Word("32");
    default:
      if (j % 2 == 1) return repeat_then("23", (j - 3) / 2, "211");
      return repeat_then("23", (j - 4) / 2, "2132");
  }
}

CouplingSegment coupling_segment(int j) {
  CouplingSegment seg;
  seg.j = j;
  seg.first_word = coupling_word_upper(j);
  seg.second_word = coupling_word_lower(j);
  seg.first_interval = cylinder_of(seg.first_word);
  seg.second_interval = cylinder_of(seg.second_word);
  if (j == 1) {
    seg.first_level = golden::bottom_level();
    seg.second_level = golden::mid_level();
  } else {
    seg.first_level = golden::top_level();
    seg.second_level = golden::bottom_level();
  }
  return seg;
}

}  // namespace gms
