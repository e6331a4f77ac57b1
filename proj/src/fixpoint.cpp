#include "ultra/fixpoint.hpp"

#include <stdexcept>

#include "ultra/errors.hpp"

namespace ultra {
namespace {

mpz_class poly_eval_mod(const std::vector<mpz_class>& coeffs, const mpz_class& x, const mpz_class& mod) {
  mpz_class acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = (acc * x + *it) % mod;
  }
  if (acc < 0) acc += mod;
  return acc;
}

std::vector<mpz_class> derivative(const std::vector<mpz_class>& coeffs) {
  std::vector<mpz_class> d;
  for (size_t k = 1; k < coeffs.size(); ++k) d.push_back(coeffs[k] * static_cast<long>(k));
  if (d.empty()) d.push_back(0);
  return d;
}

void append_fixed_scan(const SelfMap& t, long point, std::vector<long>& fixed_set, bool& unique) {
  for (long x = 0; x < t.size(); ++x) {
    if (t.apply(x) == x) fixed_set.push_back(x);
  }
  unique = fixed_set.size() == 1 && fixed_set.front() == point;
}

}  // namespace

SelfMap SelfMap::create(Space space, std::vector<long> image) {
  const long n = space.size();
  if (static_cast<long>(image.size()) != n) {
    throw ArgError("image table has " + std::to_string(image.size()) + " entries for " +
                   std::to_string(n) + " points");
  }
  for (long x = 0; x < n; ++x) {
    if (image[x] < 0 || image[x] >= n) {
      throw ArgError("image of point " + std::to_string(x) + " is out of range");
    }
  }
  return SelfMap(std::move(space), std::move(image));
}

std::optional<PairWitness> strictly_nonexpansive_witness(const SelfMap& t) {
  const Space& s = t.space();
  for (long x = 0; x < s.size(); ++x) {
    for (long y = x + 1; y < s.size(); ++y) {
      if (s.rank(t.apply(x), t.apply(y)) >= s.rank(x, y)) return PairWitness{x, y};
    }
  }
  return std::nullopt;
}

std::optional<PairWitness> contractive_witness(const SelfMap& t, const Rational& alpha) {
  if (alpha.is_negative() || !(alpha < Rational(1))) {
    throw ArgError("contraction factor must satisfy 0 <= alpha < 1, got " + alpha.str());
  }
  const Space& s = t.space();
  for (long x = 0; x < s.size(); ++x) {
    for (long y = x + 1; y < s.size(); ++y) {
      if (s.dist(t.apply(x), t.apply(y)) > alpha * s.dist(x, y)) return PairWitness{x, y};
    }
  }
  return std::nullopt;
}

ValidationReport validate_certificate(const SelfMap& t, const DescentCertificate& cert) {
  ValidationReport rep;
  const auto& chain = cert.chain;
  if (chain.empty()) {
    rep.add("nonempty-chain", {}, "certificate has no balls");
    return rep;
  }
  const Space& s = t.space();
  for (size_t k = 0; k < chain.size(); ++k) {
    const long c = chain[k].center;
    if (c < 0 || c >= s.size()) {
      rep.add("center-in-space", {static_cast<long>(k)}, "center index out of range");
      return rep;
    }
    if (chain[k].radius != s.dist(c, t.apply(c))) {
      rep.add("radius-is-displacement", {static_cast<long>(k)},
              "ball " + std::to_string(k) + " has radius " + chain[k].radius.str() +
                  ", but the center moves by " + s.dist(c, t.apply(c)).str());
    }
    if (k + 1 < chain.size() && chain[k + 1].center != t.apply(c)) {
      rep.add("centers-step-by-map", {static_cast<long>(k + 1)},
              "center " + std::to_string(k + 1) + " is not the image of center " + std::to_string(k));
    }
  }
  for (size_t k = 1; k < chain.size(); ++k) {
    if (!(chain[k].radius < chain[k - 1].radius)) {
      rep.add("radii-strictly-drop", {static_cast<long>(k)},
              "radius does not drop at step " + std::to_string(k));
    }
    const PointSet outer = ball_members(s, chain[k - 1].center, chain[k - 1].radius);
    const PointSet inner = ball_members(s, chain[k].center, chain[k].radius);
    if (!(inner.is_subset_of(outer) && inner != outer)) {
      rep.add("strict-nesting", {static_cast<long>(k)},
              "ball " + std::to_string(k) + " is not strictly inside ball " + std::to_string(k - 1));
    }
  }
  const BallStep& last = chain.back();
  if (!last.radius.is_zero()) {
    rep.add("terminal-radius-zero", {static_cast<long>(chain.size() - 1)},
            "final radius is " + last.radius.str());
  }
  if (t.apply(last.center) != last.center) {
    rep.add("terminal-fixed", {static_cast<long>(chain.size() - 1)},
            "final center is not a fixed point");
  }
  return rep;
}

FixResult ultra_fixpoint(const SelfMap& t, long start) {
  const Space& s = t.space();
  if (s.kind() != MetricKind::Ultrametric) throw ArgError("solver requires an ultrametric space");
  if (start < 0 || start >= s.size()) throw ArgError("start index out of range");
  if (auto w = strictly_nonexpansive_witness(t)) {
    throw PreconditionError("strictly-nonexpansive", {w->x, w->y},
                            "map expands the pair (" + std::to_string(w->x) + ", " +
                                std::to_string(w->y) + ")");
  }

  FixResult res;
  long x = start;
  // Displacement d(x, Tx) strictly decreases through the finite value set
  // while x is not fixed, so this terminates well inside the guard.
  for (long guard = 0; guard <= 2 * s.size() + 2; ++guard) {
    const long tx = t.apply(x);
    res.cert.chain.push_back({x, s.dist(x, tx)});
    if (tx == x) {
      res.point = x;
      res.iterations = static_cast<long>(res.cert.chain.size()) - 1;
      append_fixed_scan(t, x, res.fixed_set, res.unique);
      const ValidationReport check = validate_certificate(t, res.cert);
      if (!check.ok()) {
        throw std::logic_error("descent certificate failed re-validation: " + check.violations[0].law);
      }
      return res;
    }
    x = tx;
  }
  throw std::logic_error("iteration failed to reach a fixed point");
}

BanachResult banach_fixpoint(const SelfMap& t, const Rational& alpha, long start,
                             const Rational& radius_tol) {
  const Space& s = t.space();
  if (start < 0 || start >= s.size()) throw ArgError("start index out of range");
  if (radius_tol.is_negative()) throw ArgError("radius tolerance must be nonnegative");
  if (auto w = contractive_witness(t, alpha)) {
    throw PreconditionError("contraction", {w->x, w->y},
                            "map is not an " + alpha.str() + "-contraction on the pair (" +
                                std::to_string(w->x) + ", " + std::to_string(w->y) + ")");
  }

  BanachResult res;
  long x = start;
  for (long guard = 0; guard <= 2 * s.size() + 2; ++guard) {
    res.orbit.push_back(x);
    if (s.dist(x, t.apply(x)) <= radius_tol) break;
    x = t.apply(x);
  }
  res.point = res.orbit.back();
  res.iterations = static_cast<long>(res.orbit.size()) - 1;
  res.final_displacement = s.dist(res.point, t.apply(res.point));
  res.exact = res.final_displacement.is_zero();
  if (!res.exact && radius_tol.is_zero()) {
    throw std::logic_error("iteration failed to reach a fixed point");
  }

  // Rate ledger and ball certificate describe convergence to the true
  // limit, so they are only meaningful when the stop was exact.
  if (res.exact) {
    const Rational d0 = s.dist(start, res.point);
    Rational factor(1);
    for (size_t k = 0; k < res.orbit.size(); ++k) {
      const Rational dk = s.dist(res.orbit[k], res.point);
      res.rate.push_back({static_cast<long>(k), dk, factor * d0, dk <= factor * d0});
      if (!res.rate.back().ok) {
        throw std::logic_error("orbit broke the geometric decay bound at step " + std::to_string(k));
      }
      factor = factor * alpha;
    }
    if (s.kind() == MetricKind::Ultrametric) {
      DescentCertificate cert;
      for (long c : res.orbit) cert.chain.push_back({c, s.dist(c, t.apply(c))});
      const ValidationReport check = validate_certificate(t, cert);
      if (!check.ok()) {
        throw std::logic_error("descent certificate failed re-validation: " + check.violations[0].law);
      }
      res.cert = std::move(cert);
    }
  }
  append_fixed_scan(t, res.point, res.fixed_set, res.unique);
  return res;
}

std::vector<long> picard_orbit(const SelfMap& t, long start, long max_steps) {
  if (start < 0 || start >= t.size()) throw ArgError("start index out of range");
  std::vector<long> orbit;
  std::vector<char> seen(t.size(), 0);
  long x = start;
  while (!seen[x]) {
    orbit.push_back(x);
    seen[x] = 1;
    if (max_steps >= 0 && static_cast<long>(orbit.size()) > max_steps) break;
    x = t.apply(x);
  }
  return orbit;
}

PadicFixResult hensel_solve(const PAdicModel& m, const std::vector<mpz_class>& coeffs, const mpz_class& x0) {
  if (coeffs.size() < 2) throw ArgError("polynomial must have degree >= 1");
  if (!m.in_carrier(x0)) throw ArgError("seed " + x0.get_str() + " outside carrier");
  const mpz_class p(m.p());
  const std::vector<mpz_class> dcoeffs = derivative(coeffs);

  if (poly_eval_mod(coeffs, x0, p) != 0) {
    throw PreconditionError("simple-root-seed", {},
                            "not a root mod p: f(" + x0.get_str() + ") is not divisible by " + p.get_str());
  }
  if (poly_eval_mod(dcoeffs, x0, p) == 0) {
    throw PreconditionError("unit-derivative-seed", {},
                            "singular seed: f'(" + x0.get_str() + ") vanishes mod " + p.get_str());
  }

  PadicFixResult res;
  mpz_class x = x0;
  for (int guard = 0; guard <= 2 * m.precision() + 4; ++guard) {
    const mpz_class fx = poly_eval_mod(coeffs, x, m.modulus());
    if (fx == 0) {
      res.chain.push_back({x, Rational(0)});
      res.point = x;
      res.iterations = static_cast<long>(res.chain.size()) - 1;
      const ValidationReport check = validate_padic_certificate(m, res.chain);
      if (!check.ok()) {
        throw std::logic_error("refinement certificate failed re-validation: " + check.violations[0].law);
      }
      return res;
    }
    mpz_class dfx = poly_eval_mod(dcoeffs, x, m.modulus());
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), m.modulus().get_mpz_t()) == 0) {
      throw std::logic_error("derivative became non-invertible during refinement");
    }
    const mpz_class next = m.reduce(x - fx * inv);
    res.chain.push_back({x, m.dist(x, next)});
    x = next;
  }
  throw std::logic_error("refinement failed to converge");
}

PadicFixResult padic_affine_fixpoint(const PAdicModel& m, const mpz_class& a, const mpz_class& b,
                                     const mpz_class& x0) {
  if (!m.in_carrier(x0)) throw ArgError("seed " + x0.get_str() + " outside carrier");
  const mpz_class ra = m.reduce(a);
  const mpz_class rb = m.reduce(b);
  if (ra % m.p() != 0) {
    throw PreconditionError("affine-contraction", {},
                            "coefficient " + ra.get_str() + " is a unit mod " + std::to_string(m.p()) +
                                ", so the map does not contract");
  }

  PadicFixResult res;
  mpz_class x = x0;
  for (int guard = 0; guard <= m.precision() + 2; ++guard) {
    const mpz_class next = m.reduce(ra * x + rb);
    res.chain.push_back({x, m.dist(x, next)});
    if (next == x) {
      res.point = x;
      res.iterations = static_cast<long>(res.chain.size()) - 1;
      const ValidationReport check = validate_padic_certificate(m, res.chain);
      if (!check.ok()) {
        throw std::logic_error("descent certificate failed re-validation: " + check.violations[0].law);
      }
      return res;
    }
    x = next;
  }
  throw std::logic_error("iteration failed to reach a fixed point");
}

PadicFixResult padic_poly_fixpoint(const PolySpec& spec) {
  const PAdicModel m = PAdicModel::create(spec.p, spec.precision);
  if (spec.mode == PolySpec::Mode::Newton) {
    return hensel_solve(m, spec.coeffs, spec.x0);
  }
  for (size_t k = 2; k < spec.coeffs.size(); ++k) {
    if (spec.coeffs[k] != 0) throw ArgError("affine mode needs a polynomial of degree <= 1");
  }
  const mpz_class b = spec.coeffs.empty() ? mpz_class(0) : spec.coeffs[0];
  const mpz_class a = spec.coeffs.size() < 2 ? mpz_class(0) : spec.coeffs[1];
  return padic_affine_fixpoint(m, a, b, spec.x0);
}

ValidationReport validate_padic_certificate(const PAdicModel& m, const std::vector<PadicBallStep>& chain) {
  ValidationReport rep;
  if (chain.empty()) {
    rep.add("nonempty-chain", {}, "certificate has no balls");
    return rep;
  }
  for (size_t k = 0; k < chain.size(); ++k) {
    if (!m.in_carrier(chain[k].center)) {
      rep.add("center-in-space", {static_cast<long>(k)}, "center outside carrier");
      return rep;
    }
  }
  for (size_t k = 0; k + 1 < chain.size(); ++k) {
    const Rational step = m.dist(chain[k].center, chain[k + 1].center);
    if (chain[k].radius != step) {
      rep.add("radius-is-displacement", {static_cast<long>(k)},
              "ball " + std::to_string(k) + " has radius " + chain[k].radius.str() +
                  ", but its center moves by " + step.str());
    }
    // Radii are attained values here, so center containment plus a strict
    // radius drop is exactly strict nesting of the member sets.
    if (!(step <= chain[k].radius)) {
      rep.add("next-center-in-ball", {static_cast<long>(k + 1)},
              "center " + std::to_string(k + 1) + " escapes ball " + std::to_string(k));
    }
    if (!(chain[k + 1].radius < chain[k].radius)) {
      rep.add("radii-strictly-drop", {static_cast<long>(k + 1)},
              "radius does not drop at step " + std::to_string(k + 1));
    }
  }
  if (!chain.back().radius.is_zero()) {
    rep.add("terminal-radius-zero", {static_cast<long>(chain.size() - 1)},
            "final radius is " + chain.back().radius.str());
  }
  return rep;
}

}  // namespace ultra
