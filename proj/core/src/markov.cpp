#include "gms/markov.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace gms {

StochasticMatrix::StochasticMatrix(std::array<Scalar, 9> entries) : m_(std::move(entries)) {}

bool StochasticMatrix::exact() const {
  return std::all_of(m_.begin(), m_.end(), [](const Scalar& s) { return s.exact(); });
}

std::array<Scalar, 3> StochasticMatrix::row_sums() const {
  std::array<Scalar, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = m_[i * 3] + m_[i * 3 + 1] + m_[i * 3 + 2];
  return out;
}

bool StochasticMatrix::support_matches_adjacency() const {
  for (Symbol i = 1; i <= 3; ++i)
    for (Symbol j = 1; j <= 3; ++j) {
      bool pos = at(i, j).sign() > 0;
      if (pos != (Adjacency::matrix[i - 1][j - 1] == 1)) return false;
    }
  return true;
}

bool StochasticMatrix::irreducible_aperiodic(int max_power) const {
  // Support-pattern primitivity: some boolean power strictly positive.
  std::array<std::array<int, 3>, 3> s{};
  for (Symbol i = 1; i <= 3; ++i)
    for (Symbol j = 1; j <= 3; ++j) s[i - 1][j - 1] = at(i, j).sign() > 0 ? 1 : 0;
  auto p = s;
  for (int k = 1; k <= max_power; ++k) {
    bool positive = true;
    for (auto& row : p)
      for (int v : row)
        if (!v) positive = false;
    if (positive) return true;
    std::array<std::array<int, 3>, 3> q{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int acc = 0;
        for (int l = 0; l < 3; ++l) acc += (p[i][l] && s[l][j]) ? 1 : 0;
        q[i][j] = acc > 0 ? 1 : 0;
      }
    p = q;
  }
  return false;
}

StochasticMatrix StochasticMatrix::multiply(const StochasticMatrix& o) const {
  std::array<Scalar, 9> out{};
  for (Symbol i = 1; i <= 3; ++i)
    for (Symbol j = 1; j <= 3; ++j) {
      Scalar acc(0);
      for (Symbol l = 1; l <= 3; ++l) acc += at(i, l) * o.at(l, j);
      out[(i - 1) * 3 + (j - 1)] = acc;
    }
  return StochasticMatrix(out);
}

Dist3 StochasticMatrix::apply_left(const Dist3& pi) const {
  Dist3 out{};
  for (Symbol j = 1; j <= 3; ++j) {
    Scalar acc(0);
    for (Symbol i = 1; i <= 3; ++i) acc += pi[i - 1] * at(i, j);
    out[j - 1] = acc;
  }
  return out;
}

StochasticMatrix matrix_q() {
  const FieldElement phi = golden::phi();
  const FieldElement one(1);
  FieldElement a = phi / (one + phi);  // = 1/phi
  FieldElement b = one / (one + phi);  // = 1/phi^2
  return StochasticMatrix({Scalar(a), Scalar(0), Scalar(b),
                           Scalar(a), Scalar(0), Scalar(b),
                           Scalar(0), Scalar(1), Scalar(0)});
}

StochasticMatrix matrix_q_lambda(const Scalar& lambda) {
  if (lambda < Scalar(1)) throw std::invalid_argument("matrix_q_lambda: lambda >= 1 required");
  Scalar phi = Scalar(golden::phi());
  Scalar one(1);
  Scalar d = one + phi * lambda;
  Scalar a = phi * lambda / d;
  Scalar b = one / d;
  Scalar c = phi / (one + phi);
  Scalar e = one / (one + phi);
  return StochasticMatrix({a, Scalar(0), b, c, Scalar(0), e, Scalar(0), one, Scalar(0)});
}

Dist3 stationary_pi_q() {
  // 1/sqrt5 = (2 phi - 1)/5; 1/(phi sqrt5) = (3 - phi)/5.
  FieldElement p1(Rational(-1, 5), Rational(2, 5));
  FieldElement p2(Rational(3, 5), Rational(-1, 5));
  return {Scalar(p1), Scalar(p2), Scalar(p2)};
}

Dist3 lebesgue_lengths() {
  return {Scalar(golden::inv_phi2()), Scalar(golden::inv_phi2()),
          Scalar(golden::inv_phi2() * golden::inv_phi())};
}

Dist3 stationary(const StochasticMatrix& P) {
  if (!P.irreducible_aperiodic())
    throw std::domain_error("stationary: matrix not irreducible aperiodic");
  // Solve pi (P - I) = 0 with sum(pi) = 1: unknowns pi_1..pi_3, equations
  // sum_i pi_i (P_{ij} - delta_ij) = 0 for j = 1,2 plus the normalization.
  std::array<std::array<Scalar, 4>, 3> aug{};
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 3; ++i) {
      Scalar v = P.at(i + 1, j + 1);
      if (i == j) v -= Scalar(1);
      aug[j][i] = v;
    }
    aug[j][3] = Scalar(0);
  }
  for (int i = 0; i < 3; ++i) aug[2][i] = Scalar(1);
  aug[2][3] = Scalar(1);

  // Gaussian elimination with exact pivoting on nonzero entries.
  for (int col = 0; col < 3; ++col) {
    int piv = -1;
    for (int r = col; r < 3; ++r)
      if (aug[r][col].sign() != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("stationary: singular system");
    std::swap(aug[col], aug[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || aug[r][col].sign() == 0) continue;
      Scalar f = aug[r][col] / aug[col][col];
      for (int c = col; c < 4; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  Dist3 pi{};
  for (int i = 0; i < 3; ++i) {
    pi[i] = aug[i][3] / aug[i][i];
    if (pi[i].sign() <= 0) throw std::domain_error("stationary: non-positive entry");
  }
  return pi;
}

MeasureSpec MeasureSpec::lebesgue(Initial init) {
  MeasureSpec spec;
  spec.init_ = init;
  spec.base_index_ = (init == Initial::LebesgueLengths) ? 1 : 0;
  spec.max_index_ = spec.base_index_;
  spec.q_ = matrix_q();
  return spec;
}

MeasureSpec MeasureSpec::single_block(const Scalar& lambda, long lo, long hi, Initial init) {
  return from_blocks({Block{lo, hi, lambda}}, init);
}

MeasureSpec MeasureSpec::from_blocks(std::vector<Block> blocks, Initial init) {
  MeasureSpec spec;
  spec.init_ = init;
  spec.base_index_ = (init == Initial::LebesgueLengths) ? 1 : 0;
  spec.q_ = matrix_q();
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
    if (blocks[i].hi > blocks[i + 1].lo)
      throw std::invalid_argument("MeasureSpec: overlapping lambda blocks");
  for (const Block& b : blocks) {
    if (b.lo < spec.base_index_)
      throw std::invalid_argument("MeasureSpec: block below the base index");
    spec.block_matrices_.push_back(matrix_q_lambda(b.lambda));
  }
  spec.blocks_ = std::move(blocks);
  spec.max_index_ = spec.base_index_;
  if (!spec.blocks_.empty()) spec.max_index_ = spec.blocks_.back().hi;
  return spec;
}

const StochasticMatrix& MeasureSpec::P(long j) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (j >= blocks_[i].lo && j < blocks_[i].hi) return block_matrices_[i];
  return q_;
}

Dist3 MeasureSpec::pi(long j) const {
  Dist3 base = (init_ == Initial::LebesgueLengths) ? lebesgue_lengths() : stationary_pi_q();
  if (j <= base_index_) return base;
  std::size_t steps = static_cast<std::size_t>(j - base_index_);
  if (pi_cache_.size() < steps) {
    Dist3 cur = pi_cache_.empty() ? base : pi_cache_.back();
    for (std::size_t k = pi_cache_.size(); k < steps; ++k) {
      long idx = base_index_ + static_cast<long>(k) + 1;  // pi_idx = pi_{idx-1} P_idx
      cur = P(idx).apply_left(cur);
      pi_cache_.push_back(cur);
    }
  }
  return pi_cache_[steps - 1];
}

Scalar MeasureSpec::cylinder_mass(const Word& w, long k) const {
  if (!w.admissible()) throw std::invalid_argument("cylinder_mass: inadmissible word");
  Scalar mass = pi(k)[w.at(0) - 1];
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    long j = k + static_cast<long>(i);
    mass *= P(j).at(w.at(i), w.at(i + 1));
  }
  return mass;
}

Scalar MeasureSpec::rn_shift(const Word& w, long k, long n) const {
  Scalar denom = cylinder_mass(w, k);
  if (denom.sign() <= 0) throw std::domain_error("rn_shift: zero-mass cylinder");
  Scalar numer = cylinder_mass(w, k + n);
  return numer / denom;
}

long MeasureSpec::stabilization_index(long n) const {
  if (n == 0) return base_index_;
  // P_{j+n} = P_j for all j >= max block index (both sides are Q there).
  return std::max(base_index_, max_index_);
}

namespace {

struct DpTables {
  // prob[state][count]
  std::array<std::vector<Scalar>, 3> cur, nxt;
};

FrequencyResult frequency_dp(const StochasticMatrix& P, const Dist3& pi, long horizon,
                             const FrequencyEvent& ev) {
  long chain_len = horizon + (ev.kind == FrequencyEvent::Kind::PairCount ? 1 : 0);
  long max_count = horizon + 1;
  DpTables t;
  for (auto& v : t.cur) v.assign(static_cast<std::size_t>(max_count) + 1, Scalar(0));
  for (auto& v : t.nxt) v.assign(static_cast<std::size_t>(max_count) + 1, Scalar(0));
  // Position 1.
  for (Symbol s = 1; s <= 3; ++s) {
    long c0 = (ev.kind == FrequencyEvent::Kind::SymbolCount && s == ev.a && horizon >= 1) ? 1 : 0;
    t.cur[s - 1][static_cast<std::size_t>(c0)] += pi[s - 1];
  }
  for (long pos = 1; pos < chain_len; ++pos) {
    for (auto& v : t.nxt)
      std::fill(v.begin(), v.end(), Scalar(0));
    for (Symbol s = 1; s <= 3; ++s) {
      for (long c = 0; c <= max_count; ++c) {
        const Scalar& p = t.cur[s - 1][static_cast<std::size_t>(c)];
        if (p.sign() == 0) continue;
        for (Symbol snew = 1; snew <= 3; ++snew) {
          const Scalar& tr = P.at(s, snew);
          if (tr.sign() == 0) continue;
          long cn = c;
          if (ev.kind == FrequencyEvent::Kind::SymbolCount) {
            if (snew == ev.a && pos + 1 <= horizon) ++cn;
          } else {
            // transition pos -> pos+1 is pair index `pos` (counted for pos <= horizon)
            if (s == ev.a && snew == ev.b && pos <= horizon) ++cn;
          }
          t.nxt[snew - 1][static_cast<std::size_t>(cn)] += p * tr;
        }
      }
    }
    std::swap(t.cur, t.nxt);
  }
  Scalar total(0);
  for (Symbol s = 1; s <= 3; ++s)
    for (long c = std::max(0L, ev.lo_count); c <= std::min(max_count, ev.hi_count); ++c)
      total += t.cur[s - 1][static_cast<std::size_t>(c)];
  FrequencyResult res;
  res.probability = total;
  return res;
}

FrequencyResult frequency_mc(const StochasticMatrix& P, const Dist3& pi, long horizon,
                             const FrequencyEvent& ev, unsigned long long samples,
                             unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::array<double, 3> pid{pi[0].to_double(), pi[1].to_double(), pi[2].to_double()};
  std::array<std::array<double, 3>, 3> pd{};
  for (Symbol i = 1; i <= 3; ++i)
    for (Symbol j = 1; j <= 3; ++j) pd[i - 1][j - 1] = P.at(i, j).to_double();
  long chain_len = horizon + (ev.kind == FrequencyEvent::Kind::PairCount ? 1 : 0);
  unsigned long long hits = 0;
  for (unsigned long long it = 0; it < samples; ++it) {
    double u = unif(rng);
    Symbol s = u < pid[0] ? 1 : (u < pid[0] + pid[1] ? 2 : 3);
    long count = (ev.kind == FrequencyEvent::Kind::SymbolCount && s == ev.a) ? 1 : 0;
    for (long pos = 1; pos < chain_len; ++pos) {
      double v = unif(rng);
      Symbol t = v < pd[s - 1][0] ? 1 : (v < pd[s - 1][0] + pd[s - 1][1] ? 2 : 3);
      if (ev.kind == FrequencyEvent::Kind::SymbolCount) {
        if (t == ev.a && pos + 1 <= horizon) ++count;
      } else {
        if (s == ev.a && t == ev.b && pos <= horizon) ++count;
      }
      s = t;
    }
    if (count >= ev.lo_count && count <= ev.hi_count) ++hits;
  }
  FrequencyResult res;
  res.monte_carlo = true;
  res.samples = samples;
  double phat = static_cast<double>(hits) / static_cast<double>(samples);
  res.probability = Scalar(phat);
  // 99% Wilson interval (z = 2.5758).
  double z = 2.5758293035489004;
  double n = static_cast<double>(samples);
  double den = 1 + z * z / n;
  double center = (phat + z * z / (2 * n)) / den;
  double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / den;
  res.ci_low = std::max(0.0, center - half);
  res.ci_high = std::min(1.0, center + half);
  return res;
}

}  // namespace

FrequencyResult empirical_frequency_prob(const StochasticMatrix& P, const Dist3& pi, long horizon,
                                         const FrequencyEvent& event, long dp_cutoff,
                                         unsigned long long mc_samples, unsigned long long seed) {
  if (horizon < 1) throw std::invalid_argument("empirical_frequency_prob: horizon >= 1");
  if (horizon <= dp_cutoff) return frequency_dp(P, pi, horizon, event);
  return frequency_mc(P, pi, horizon, event, mc_samples, seed);
}

MixingCertificate mixing_time(const StochasticMatrix& P, const Scalar& delta, long max_k) {
  MixingCertificate cert;
  if (delta.sign() <= 0) throw std::invalid_argument("mixing_time: delta > 0 required");
  if (!P.irreducible_aperiodic())
    throw std::domain_error("mixing_time: matrix not irreducible aperiodic");
  if (!P.exact()) {
    // Float-backend resolution guard: cannot certify below ~2^-(prec-16).
    BigFloat res = pow_int(BigFloat(2), -(precision::default_bits() - 16));
    if (delta.to_bigfloat() < res) {
      cert.note = "needs higher precision";
      return cert;
    }
  }
  Dist3 pi = stationary(P);
  StochasticMatrix pk;  // P^k, starting at k=0 (identity)
  bool identity = true;
  for (long k = 0; k <= max_k; ++k) {
    if (k > 0) {
      pk = identity ? P : pk.multiply(P);
      identity = false;
    }
    // Multiplicative gap: max over columns of max/min row entry (inf if a zero).
    bool has_zero = false;
    Scalar mult_gap(0);
    for (Symbol j = 1; j <= 3; ++j) {
      Scalar mn, mx;
      bool first = true;
      for (Symbol i = 1; i <= 3; ++i) {
        Scalar v = identity ? Scalar(i == j ? 1 : 0) : pk.at(i, j);
        if (v.sign() <= 0) {
          has_zero = true;
          continue;
        }
        if (first) {
          mn = v;
          mx = v;
          first = false;
        } else {
          if (v < mn) mn = v;
          if (mx < v) mx = v;
        }
      }
      if (first) has_zero = true;
      if (!has_zero && !first) {
        Scalar gap = mx / mn - Scalar(1);
        if (mult_gap < gap) mult_gap = gap;
      }
    }
    Scalar dist_gap(0);
    for (Symbol i = 1; i <= 3; ++i)
      for (Symbol j = 1; j <= 3; ++j) {
        Scalar v = identity ? Scalar(i == j ? 1 : 0) : pk.at(i, j);
        Scalar d = (v - pi[j - 1]).abs();
        if (dist_gap < d) dist_gap = d;
      }
    if (!has_zero && mult_gap <= delta && dist_gap <= delta) {
      cert.k = k;
      cert.certified = true;
      cert.multiplicative_gap = mult_gap;
      cert.distance_gap = dist_gap;
      return cert;
    }
  }
  cert.note = "mixing time exceeds max_k";
  return cert;
}

namespace {
// Depth-first enumeration of admissible fillings of the free positions of a
// partially pinned word; calls sink(word) for each completion.
bool fill_rec(std::vector<uint8_t>& syms, std::size_t pos, std::size_t cap, std::size_t& produced,
              const std::function<bool(const Word&)>& sink) {
  if (pos == syms.size()) {
    ++produced;
    return sink(Word(syms));
  }
  if (produced > cap) return false;
  if (syms[pos] != 0) {
    if (pos > 0 && !Adjacency::allowed(syms[pos - 1], syms[pos])) return true;  // dead branch
    return fill_rec(syms, pos + 1, cap, produced, sink);
  }
  const auto& opts = pos == 0 ? Adjacency::roots() : Adjacency::successors(syms[pos - 1]);
  for (Symbol s : opts) {
    syms[pos] = static_cast<uint8_t>(s);
    if (!fill_rec(syms, pos + 1, cap, produced, sink)) {
      syms[pos] = 0;
      return false;
    }
    syms[pos] = 0;
  }
  return true;
}
}  // namespace

std::vector<RatioWitness> ratio_set_probe(const MeasureSpec& spec, const Scalar& r,
                                          const Scalar& eps, int depth, int max_power,
                                          std::size_t max_witnesses,
                                          std::size_t enumeration_cap) {
  if (r.sign() < 0) throw std::invalid_argument("ratio_set_probe: r >= 0 required");
  if (eps.sign() <= 0) throw std::invalid_argument("ratio_set_probe: eps > 0 required");
  std::vector<RatioWitness> out;
  for (int d = 1; d <= depth && out.size() < max_witnesses; ++d) {
    for (const Word& w : enumerate_words(d)) {
      for (long n = 1; n <= max_power && out.size() < max_witnesses; ++n) {
        // A cap T^{-n}A pins positions 1..d and n+1..n+d (1-based) to w; the
        // derivative is constant on refinements of length >= stabilization.
        long len = std::max<long>(d + n, spec.stabilization_index(n));
        std::vector<uint8_t> syms(static_cast<std::size_t>(len), 0);
        bool compatible = true;
        for (long i = 0; i < d; ++i) {
          syms[static_cast<std::size_t>(i)] = static_cast<uint8_t>(w.at(static_cast<std::size_t>(i)));
          std::size_t shifted = static_cast<std::size_t>(n + i);
          if (shifted < syms.size()) {
            uint8_t want = static_cast<uint8_t>(w.at(static_cast<std::size_t>(i)));
            if (syms[shifted] != 0 && syms[shifted] != want) {
              compatible = false;
              break;
            }
            syms[shifted] = want;
          }
        }
        if (!compatible) continue;
        std::size_t produced = 0;
        fill_rec(syms, 0, enumeration_cap, produced, [&](const Word& full) {
          if (!full.admissible()) return true;
          Scalar mass = spec.cylinder_mass(full, 1);
          if (mass.sign() <= 0) return true;
          Scalar rn = spec.rn_shift(full, 1, n);
          if ((rn - r).abs() < eps) {
            out.push_back(RatioWitness{w, n, full, rn, mass});
            if (out.size() >= max_witnesses) return false;
          }
          return true;
        });
      }
    }
  }
  return out;
}

}  // namespace gms
