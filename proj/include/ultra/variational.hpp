#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ultra/order.hpp"
#include "ultra/rational.hpp"
#include "ultra/space.hpp"

namespace ultra {

/// Validated space together with a nonnegative weight per point.
class WeightedSpace {
 public:
  static WeightedSpace create(Space space, std::vector<Rational> phi);

  const Space& space() const { return space_; }
  long size() const { return space_.size(); }
  const Rational& phi(long i) const { return phi_[i]; }
  const std::vector<Rational>& weights() const { return phi_; }

 private:
  WeightedSpace(Space space, std::vector<Rational> phi) : space_(std::move(space)), phi_(std::move(phi)) {}

  Space space_;
  std::vector<Rational> phi_;
};

/// x precedes y when the move from x to y is paid for by the weight drop:
/// d(x, y) <= phi(x) - phi(y).
bool brondsted_leq(const WeightedSpace& w, long x, long y);

/// The full relation above, materialized as a quasi-order carrying phi.
/// It always validates: reflexivity and transitivity come from the metric
/// axioms, and the weight decreases by construction.
QuasiOrder brondsted_order(const WeightedSpace& w);

/// One inequality d(from, to) <= phi(from) - phi(to), evaluated exactly.
struct DropCheck {
  long from;
  long to;
  Rational dist;
  Rational drop;  // phi(from) - phi(to)
  bool ok;
};

struct EvpRecord {
  long u;
  long v;
  /// d(u, v) <= phi(u) - phi(v): v is reachable from the start.
  DropCheck reachability;
  /// For every x != v, d(v, x) > phi(v) - phi(x): no further descent.
  std::vector<DropCheck> minimality;
  bool ok;
};

/// Variational point above u: runs the weight descent inside the
/// Brøndsted order and returns v together with the full evaluation of
/// both defining inequalities.  Works for both space kinds.
struct EvpResult {
  MaximalReport descent;
  EvpRecord record;
};

EvpResult evp_point(const WeightedSpace& w, long u);

/// Same, reusing an already materialized Brøndsted order of w (callers
/// sweeping every start on one space avoid rebuilding the relation).
EvpResult evp_point(const WeightedSpace& w, const QuasiOrder& order, long u);

/// Direct evaluation of the two defining inequalities for a claimed pair,
/// independent of the descent machinery.
EvpRecord evp_evaluate(const WeightedSpace& w, long u, long v);
bool evp_verify(const WeightedSpace& w, long u, long v);

/// First pair of elements (by lexicographic order) whose set of common
/// lower bounds has no greatest element, or nullopt when every pair has
/// one.  Meaningful for antisymmetric orders; a survey helper for tests,
/// not part of the solver path.
std::optional<std::pair<long, long>> inf_lattice_gap(const QuasiOrder& q);

}  // namespace ultra
