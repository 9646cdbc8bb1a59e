#pragma once

#include "gms/field.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gms {

// Golden-mean shift on three symbols. The Markov partition of S x = phi*x mod 1
// is J1 = [0, 1/phi^2), J2 = [1/phi, 1), J3 = [1/phi^2, 1/phi); the adjacency
// matrix has rows (1,0,1), (1,0,1), (0,1,0). The geometric symbol order
// (left to right on the circle) is 1 < 3 < 2.
using Symbol = int;  // 1, 2 or 3

struct Adjacency {
  static constexpr std::array<std::array<int, 3>, 3> matrix{{{1, 0, 1}, {1, 0, 1}, {0, 1, 0}}};
  static constexpr bool allowed(Symbol a, Symbol b) { return matrix[a - 1][b - 1] == 1; }
  // Successors in geometric (cylinder) order.
  static const std::vector<Symbol>& successors(Symbol s);
  // Roots in geometric order: 1, 3, 2.
  static const std::vector<Symbol>& roots();
  static int rank(Symbol s) { return s == 1 ? 0 : (s == 3 ? 1 : 2); }
  // True iff some power of the matrix is strictly positive (checked up to `max_power`).
  static bool mixing(int max_power = 8);
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<uint8_t> syms);
  explicit Word(std::string_view digits);

  std::size_t size() const { return syms_.size(); }
  bool empty() const { return syms_.empty(); }
  Symbol at(std::size_t i) const { return syms_[i]; }  // 0-based
  Symbol back() const { return syms_.back(); }
  bool admissible() const;
  void push_back(Symbol s) { syms_.push_back(static_cast<uint8_t>(s)); }
  Word prefix(std::size_t n) const;
  Word suffix_from(std::size_t i) const;  // drop the first i symbols
  Word concat(const Word& tail) const;

  std::string str() const;

  friend bool operator==(const Word& x, const Word& y) { return x.syms_ == y.syms_; }
  friend bool operator!=(const Word& x, const Word& y) { return !(x == y); }

 private:
  std::vector<uint8_t> syms_;
};

struct Interval {
  FieldElement lo, hi;  // [lo, hi)
  FieldElement length() const { return hi - lo; }
  bool contains(const FieldElement& x) const { return lo <= x && x < hi; }
};

// Partition elements of S.
Interval partition_interval(Symbol s);
Symbol symbol_of(const FieldElement& x);  // which J_i contains x in [0,1)

// Exact cylinder interval of an admissible word (depth = word length);
// throws std::invalid_argument on an inadmissible word.
Interval cylinder_of(const Word& w);

// All admissible words of length n in cylinder (geometric) order.
std::vector<Word> enumerate_words(int n);
long count_words(int n);

// Strict order: true iff the cylinder of w lies strictly left of the cylinder
// of z at the first disagreement; false when one is a prefix of the other.
bool precede(const Word& w, const Word& z);

// Neighbors of w among admissible words of the same length, in cylinder order,
// wrapping around the circle.
Word predecessor_same_length(const Word& w);
Word successor_same_length(const Word& w);

// Boundary coupling segments V_j of the glued manifold. For j >= 2 the two
// identified pieces live on the top (phi^2/(phi+2)) and bottom (-phi/(phi+2))
// horizontal lines; V_1 pairs the bottom-left piece with the interior
// horizontal segment at level 1/(phi+2).
struct CouplingSegment {
  int j = 0;
  Word first_word;   // w(j)
  Word second_word;  // w~(j)
  Interval first_interval, second_interval;
  FieldElement first_level, second_level;
  int coupling_time() const { return j + 1; }
};

Word coupling_word_upper(int j);   // w(j)
Word coupling_word_lower(int j);   // w~(j)
CouplingSegment coupling_segment(int j);

}  // namespace gms
