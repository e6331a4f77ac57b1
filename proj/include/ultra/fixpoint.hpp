#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ultra/rational.hpp"
#include "ultra/report.hpp"
#include "ultra/space.hpp"
#include "ultra/spaces.hpp"

namespace ultra {

/// Self-map of a validated space, given as an image table.
class SelfMap {
 public:
  static SelfMap create(Space space, std::vector<long> image);

  const Space& space() const { return space_; }
  long size() const { return space_.size(); }
  long apply(long x) const { return image_[x]; }
  const std::vector<long>& image() const { return image_; }

 private:
  SelfMap(Space space, std::vector<long> image) : space_(std::move(space)), image_(std::move(image)) {}

  Space space_;
  std::vector<long> image_;
};

struct PairWitness {
  long x;
  long y;
};

/// nullopt when d(Tx, Ty) < d(x, y) for every distinct pair; otherwise
/// the lexicographically smallest offending pair.
std::optional<PairWitness> strictly_nonexpansive_witness(const SelfMap& t);

/// nullopt when d(Tx, Ty) <= alpha * d(x, y) for every pair, with
/// 0 <= alpha < 1 (ArgError otherwise); else the smallest offending pair.
std::optional<PairWitness> contractive_witness(const SelfMap& t, const Rational& alpha);

/// One ball of the descent: X[center, d(center, T center)].
struct BallStep {
  long center;
  Rational radius;
};

/// Strictly nested ball chain ending in a radius-zero ball around the
/// fixed point.  Each step's center is the image of the previous one.
struct DescentCertificate {
  std::vector<BallStep> chain;
};

/// Re-derives every claim a certificate makes against the core ball
/// machinery: radii equal the displacement d(c, Tc), consecutive centers
/// step by T, member sets strictly nest, radii strictly drop, and the
/// final center is fixed.  Empty report means the certificate is valid.
ValidationReport validate_certificate(const SelfMap& t, const DescentCertificate& cert);

struct FixResult {
  long point;
  long iterations;
  DescentCertificate cert;
  std::vector<long> fixed_set;  // every fixed point, by exhaustive scan
  bool unique;                  // fixed_set == {point}
};

/// Fixed point of a strictly nonexpansive map on an ultrametric space,
/// by iterating from `start` and recording the ball descent.  Throws
/// PreconditionError (with the witness pair) when the map expands
/// somewhere, ArgError on a non-ultrametric space.
FixResult ultra_fixpoint(const SelfMap& t, long start = 0);

struct RateCheck {
  long step;
  Rational dist;   // d(x_step, v)
  Rational bound;  // alpha^step * d(x_0, v)
  bool ok;
};

struct BanachResult {
  long point;
  long iterations;
  std::vector<long> orbit;
  std::vector<RateCheck> rate;  // exact geometric-decay ledger
  /// Present on ultrametric spaces, where contraction implies the strict
  /// ball descent; plain metric spaces get the orbit and rate only.
  std::optional<DescentCertificate> cert;
  std::vector<long> fixed_set;
  bool unique;
  bool exact;                // final displacement is exactly zero
  Rational final_displacement;
};

/// Fixed point of an exact alpha-contraction on either space kind.
/// `radius_tol` enables an approximate mode for coarse user matrices: the
/// iteration stops once d(x, Tx) <= radius_tol, and when that stop is not
/// exact the result carries no rate ledger or certificate (the limit was
/// never reached).  All built-in models run exact with the default tol 0.
BanachResult banach_fixpoint(const SelfMap& t, const Rational& alpha, long start = 0,
                             const Rational& radius_tol = Rational(0));

/// Orbit of x under T from `start`, stopping at the first repeated point
/// (inclusive of the start, exclusive of the repeat) or after `max_steps`
/// applications of T when max_steps >= 0.
std::vector<long> picard_orbit(const SelfMap& t, long start, long max_steps = -1);

/// Polynomial self-map data over a p-adic model.  `newton` runs the
/// root-refinement iteration x - f(x)/f'(x) for the polynomial with the
/// given coefficients (constant first); `affine` interprets the first two
/// coefficients as T(x) = c0 + c1 x and requires v_p(c1) >= 1.
struct PolySpec {
  long p;
  int precision;
  std::vector<mpz_class> coeffs;
  mpz_class x0;
  enum class Mode { Newton, Affine } mode = Mode::Newton;
};

struct PadicBallStep {
  mpz_class center;
  Rational radius;
};

struct PadicFixResult {
  mpz_class point;
  long iterations;
  std::vector<PadicBallStep> chain;
};

/// Root of f refined from a simple seed: requires f(x0) = 0 mod p and
/// f'(x0) a unit mod p (PreconditionError otherwise, law "simple-root-
/// seed" resp. "unit-derivative-seed").  The chain records the ball
/// descent of the induced iteration inside the truncated carrier.
PadicFixResult hensel_solve(const PAdicModel& m, const std::vector<mpz_class>& coeffs, const mpz_class& x0);

/// Fixed point of T(x) = a x + b when v_p(a) >= 1.
PadicFixResult padic_affine_fixpoint(const PAdicModel& m, const mpz_class& a, const mpz_class& b,
                                     const mpz_class& x0);

/// Dispatches a PolySpec to the two solvers above.
PadicFixResult padic_poly_fixpoint(const PolySpec& spec);

/// Ball-descent checks for a p-adic chain, done arithmetically (without
/// materializing the carrier): radii are attained distance values that
/// strictly drop to zero, each center lies in the previous ball, and the
/// radii match the center-to-center displacements.
ValidationReport validate_padic_certificate(const PAdicModel& m, const std::vector<PadicBallStep>& chain);

}  // namespace ultra
