#pragma once

#include "gms/scalar.hpp"
#include "gms/symbolic.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace gms {

using Dist3 = std::array<Scalar, 3>;

// Row-stochastic 3x3 matrix over Scalar; support must match the golden-mean
// adjacency for everything used by the construction.
class StochasticMatrix {
 public:
  StochasticMatrix() = default;
  explicit StochasticMatrix(std::array<Scalar, 9> entries);

  const Scalar& at(Symbol from, Symbol to) const { return m_[(from - 1) * 3 + (to - 1)]; }
  Scalar& at(Symbol from, Symbol to) { return m_[(from - 1) * 3 + (to - 1)]; }

  bool exact() const;
  std::array<Scalar, 3> row_sums() const;
  bool support_matches_adjacency() const;
  bool irreducible_aperiodic(int max_power = 12) const;

  StochasticMatrix multiply(const StochasticMatrix& o) const;
  Dist3 apply_left(const Dist3& pi) const;  // pi * P

  friend bool operator==(const StochasticMatrix& a, const StochasticMatrix& b) {
    for (int i = 0; i < 9; ++i)
      if (!(a.m_[i] == b.m_[i])) return false;
    return true;
  }

 private:
  std::array<Scalar, 9> m_{};
};

// The Lebesgue transition matrix Q and its lambda-perturbation Q_lambda
// (lambda >= 1, first row distorted, second row unchanged, third row (0,1,0)).
StochasticMatrix matrix_q();
StochasticMatrix matrix_q_lambda(const Scalar& lambda);

// Stationary distribution pi_Q = (1/sqrt5, 1/(phi sqrt5), 1/(phi sqrt5)).
Dist3 stationary_pi_q();
// Lebesgue lengths (|J1|, |J2|, |J3|) = (1/phi^2, 1/phi^2, 1/phi^3).
Dist3 lebesgue_lengths();

// Unique stationary law of an irreducible aperiodic matrix (exact 3x3 solve
// when the entries are exact). Throws std::domain_error otherwise.
Dist3 stationary(const StochasticMatrix& P);

// Inhomogeneous Markov measure: a block map j -> P_j plus an initial law.
// The schedule-driven spec uses P_j = Q for j <= 0, Q_{lambda_l} on
// [M_{l-1}, N_l) and Q on [N_l, M_l), with Q beyond the last stage.
class MeasureSpec {
 public:
  enum class Initial { StationaryPiQ, LebesgueLengths };

  // All P_j = Q.
  static MeasureSpec lebesgue(Initial init = Initial::LebesgueLengths);
  // P_j = Q_lambda for j in [lo, hi), Q elsewhere.
  static MeasureSpec single_block(const Scalar& lambda, long lo, long hi,
                                  Initial init = Initial::StationaryPiQ);
  // Block structure {[M_{l-1}, N_l) -> Q_{lambda_l}} from explicit stage data.
  struct Block {
    long lo, hi;  // [lo, hi)
    Scalar lambda;
  };
  static MeasureSpec from_blocks(std::vector<Block> blocks, Initial init);

  const StochasticMatrix& P(long j) const;
  // Marginal pi_j (pi_j = pi_0 for j <= base index; forward consistency above).
  Dist3 pi(long j) const;
  long base_index() const { return base_index_; }
  Initial initial() const { return init_; }

  // mu([b]_k^{k+len-1}) = pi_k(b_k) prod P_j(b_j, b_{j+1}).
  Scalar cylinder_mass(const Word& w, long k) const;

  // mu(T^{-n}[b]) / mu([b]) for the cylinder [b]_k^{k+len-1}: equals
  // pi_{k+n}(b_k)/pi_k(b_k) * prod (P_{j+n}/P_j)(b_j, b_{j+1}).
  Scalar rn_shift(const Word& w, long k, long n) const;

  // Smallest l such that P_{j+n} = P_j for all j >= l (so the RN ratio on a
  // cylinder [b]_k^l with l >= this index is the derivative's exact value).
  long stabilization_index(long n) const;

  long max_block_index() const { return max_index_; }

 private:
  std::vector<Block> blocks_;
  Initial init_ = Initial::StationaryPiQ;
  long base_index_ = 0;  // pi(base_index_) = initial law; constant at or below
  long max_index_ = 0;
  StochasticMatrix q_;
  mutable std::vector<Dist3> pi_cache_;  // marginals from base_index_ upward
  mutable std::vector<StochasticMatrix> block_matrices_;
};

// Events for occupation-time probabilities: the count over a horizon of
// either single-symbol hits or adjacent-pair hits, with an inclusive window
// [lo_count, hi_count] of accepted counts.
struct FrequencyEvent {
  enum class Kind { SymbolCount, PairCount } kind = Kind::SymbolCount;
  Symbol a = 1, b = 1;  // pair (a, b) when kind == PairCount
  long lo_count = 0, hi_count = 0;
};

struct FrequencyResult {
  Scalar probability;     // exact/DP value, or MC point estimate
  bool monte_carlo = false;
  double ci_low = 0, ci_high = 0;  // 99% Wilson interval when monte_carlo
  unsigned long long samples = 0;
};

// P(count in [lo, hi]) for a homogeneous chain (P, pi) over `horizon` steps.
// SymbolCount counts j = 1..horizon with x_j = a; PairCount counts
// j = 1..horizon with (x_j, x_{j+1}) = (a, b) (the chain runs one step
// longer). Transfer-matrix DP over (state, count) up to `dp_cutoff`; seeded
// Monte Carlo beyond it.
FrequencyResult empirical_frequency_prob(const StochasticMatrix& P, const Dist3& pi,
                                         long horizon, const FrequencyEvent& event,
                                         long dp_cutoff = 4000,
                                         unsigned long long mc_samples = 200000,
                                         unsigned long long seed = 0x5eed);

struct MixingCertificate {
  long k = 0;
  bool certified = false;
  // max_t (max_s P^k(s,t) / min_s P^k(s,t)) - 1  (multiplicative mixing)
  Scalar multiplicative_gap;
  // max_s ||P^k(s,.) - pi||_inf
  Scalar distance_gap;
  std::string note;
};

// Smallest k certifying both the (1 +- delta) multiplicative column bound and
// the ||P^k(s,.) - pi|| <= delta distance bound. On the float backend a delta
// below the certifiable resolution is reported, never silently approximated.
MixingCertificate mixing_time(const StochasticMatrix& P, const Scalar& delta, long max_k = 4096);

struct RatioWitness {
  Word base;        // the cylinder A = [w]_1^d
  long n = 0;       // shift power
  Word refined;     // sub-cylinder of A cap T^{-n}A on which (T^n)' is constant
  Scalar rn_value;  // the derivative value there
  Scalar mass;      // mass of the refined cylinder
};

// Searches cylinders of length <= depth and powers <= max_power for
// sub-cylinders of A cap T^{-n}A where |(T^n)' - r| < eps with positive mass.
// Diagnostic only; enumeration capped at `enumeration_cap` refined cylinders
// per (A, n) pair.
std::vector<RatioWitness> ratio_set_probe(const MeasureSpec& spec, const Scalar& r,
                                          const Scalar& eps, int depth, int max_power,
                                          std::size_t max_witnesses = 32,
                                          std::size_t enumeration_cap = 200000);

}  // namespace gms
