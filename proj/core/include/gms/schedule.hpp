#pragma once

#include "gms/markov.hpp"
#include "gms/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gms {

// One machine-checked constraint of the inductive construction.
struct Certificate {
  std::string name;
  std::string detail;
  double required = 0;  // bound in the reported orientation (measured <= required)
  double measured = 0;
  bool pass = false;
  bool waived = false;  // toy profile waived this constraint
  bool ok() const { return pass || waived; }
};

enum class ProfileKind { Toy, Strict };

// Tolerance schedule for the inductive constraints. The strict profile uses
// the construction's own exponents (3^{-3N}, 2^{-l}, 1/l, ...); the toy
// profile substitutes user tolerances in (0,1) and may waive the frequency
// and lattice-divisor conditions so that desk-size schedules exist.
struct RigorProfile {
  ProfileKind kind = ProfileKind::Toy;
  // toy knobs
  double mixing_delta = 0.25;        // delta_l for the mixing certificate
  double freq_band = 0.5;            // band half-width in (9); 1 waives
  double freq_confidence = 0.5;      // required probability 1 - eta; 0 waives
  bool waive_lattice_divisor = true; // Eq. (8) p <= n/20
  double flatness_tolerance = 0.1;   // phi^{-m_t} <= this (proxy for Lemma 5)

  static RigorProfile toy() { return RigorProfile{}; }
  static RigorProfile strict() {
    RigorProfile p;
    p.kind = ProfileKind::Strict;
    p.waive_lattice_divisor = false;
    return p;
  }
};

struct StageParams {
  Scalar lambda;  // lambda_t > 1, decreasing
  long n = 0, N = 0, m = 0, M = 0;
  Scalar eps;  // eps_t >= 0
};

// The inductive parameter table. Lattice condition realized through the
// theta-parametrization f(lambda_t) = theta^{a_t} with dyadic exponents
// a_t = 2^{K-t}, where f(lambda) = lambda(1+phi)/(1+phi*lambda); with theta
// in Q(sqrt5) every lambda_t is exact.
class Schedule {
 public:
  RigorProfile profile;
  Scalar theta;
  std::vector<long> exponents;      // a_t
  std::vector<StageParams> stages;  // stages[t-1] holds stage t
  std::vector<Certificate> certificates;

  static constexpr long M0 = 1;

  long stage_count() const { return static_cast<long>(stages.size()); }
  const StageParams& stage(int t) const { return stages[static_cast<std::size_t>(t - 1)]; }
  long max_depth() const { return stages.back().N; }
  long M_of(int t) const { return t == 0 ? M0 : stage(t).M; }

  bool all_certificates_ok() const;

  // Stage classification for the staged homeomorphisms: psi_t on [M_0, N_1)
  // for t = 1 and (M_{t-1}, N_t] for t >= 2, identity strictly between,
  // distribution correction at M_t.
  enum class StageKind { Psi, Identity, Correction };
  struct StageRole {
    StageKind kind;
    int t;  // block index
  };
  StageRole role_of(long n) const;

  Scalar lambda_for_depth(long n) const;  // lambda of the enclosing block
  Scalar eps_for_depth(long n) const;

  Schedule with_zero_eps() const;
  // Companion with eps_j kept for j <= k and zeroed beyond (Lemma 7's
  // substitution schedules).
  Schedule with_eps_through(int k) const;

  // The realized lambda-distorted transition set (see density): transition j
  // is distorted by lambda_t iff stage j is a psi_t stage.
  MeasureSpec realized_measure() const;
  // The section-3 display blocks [M_{l-1}, N_l) (diagnostic RN work).
  MeasureSpec display_measure(MeasureSpec::Initial init) const;

  // f(lambda) = lambda(1+phi)/(1+phi*lambda) and its closed-form inverse
  // lambda = r / ((1+phi) - phi r), defined for 1 <= r < phi.
  static Scalar f_of_lambda(const Scalar& lambda);
  static Scalar lambda_of_f(const Scalar& r);
};

struct BuildOptions {
  int stages = 2;
  RigorProfile profile = RigorProfile::toy();
  std::optional<Scalar> theta;  // default: auto-shrink from 1 + 2^-16
  // Base-case overrides (paper base: n1 = 2, m1 = 3). Zero means "solve".
  long n1 = 0, m1 = 0;
  std::vector<long> n_overrides;  // per-stage n_t (index t-1), 0 = solve
  bool enforce_bands = true;      // require both derivative-band certificates
};

struct ScheduleBuildError : std::runtime_error {
  explicit ScheduleBuildError(const std::string& what, std::vector<Certificate> certs = {})
      : std::runtime_error(what), certificates(std::move(certs)) {}
  std::vector<Certificate> certificates;
};

// Runs the induction {lambda_s,n_s,N_s,m_s,M_s,eps_s} => lambda_{t+1} =>
// {n_{t+1}, N_{t+1}} => eps_{t+1} => {m_{t+1}, M_{t+1}} and returns the table
// with a certificate per constraint. Throws ScheduleBuildError when a strict
// constraint is infeasible at desk scale.
Schedule build_schedule(const BuildOptions& opts);

// Individual solvers (exposed for tests and the CLI).
// lambda_t from the lattice at exponent ratio p plus the post-checks
// ((5) legacy, the section 4.2.2 replacement, (7)).
struct LambdaSolution {
  Scalar lambda;
  std::vector<Certificate> certs;
};
LambdaSolution solve_lambda(const Scalar& prev_lambda, long p, long m_prev, long N_prev,
                            long M_prev, const RigorProfile& profile, int t);

struct NSolution {
  long n;
  std::vector<Certificate> certs;
};
NSolution solve_n(int t, const Schedule& partial, long override_n = 0);

struct MSolution {
  long m;
  long mixing_k;
  std::vector<Certificate> certs;
};
MSolution solve_m(int t, const Schedule& partial, long override_m = 0);

struct EpsBounds {
  Scalar geometric;  // min depth-N_t cylinder length / phi^2
  Scalar separation; // Lemma 6 operational bound
  Scalar egorov;     // Lemma 7 budget bound
  Scalar chosen;
};
EpsBounds solve_epsilon(int t, const Schedule& partial);

// The section 4.2.2 derivative band evaluated with worst-case signs:
// phi * prod lambda_t^{±2 M_{t-1}} * exp(± sum 2^{-N_t+4}), optionally with
// the lambda_1^{±6} factor the two-dimensional bound needs.
struct BandCheck {
  double low = 0, high = 0;
  bool pass = false;
};
BandCheck derivative_band(const Schedule& s, bool augmented);

}  // namespace gms
