#pragma once

#include <boost/dynamic_bitset.hpp>

#include <optional>
#include <variant>
#include <vector>

#include "ultra/rational.hpp"
#include "ultra/report.hpp"

namespace ultra {

using Row = boost::dynamic_bitset<>;

/// Raw quasi-order input: leq[x] holds the bits y with x <= y, phi is a
/// nonnegative weight per element.  Shape is checked on construction;
/// the order laws are established by QuasiOrder::validate.
struct QuasiOrderData {
  long n = 0;
  std::vector<Row> leq;
  std::vector<Rational> phi;
};

/// A reflexive transitive relation with a weight that never increases
/// along it.  Laws checked by validate: reflexivity, transitivity,
/// weight-decreasing; each violated law is reported with its
/// lexicographically smallest witness.
class QuasiOrder {
 public:
  static std::variant<QuasiOrder, ValidationReport> validate(QuasiOrderData d);

  long size() const { return n_; }
  bool leq(long x, long y) const { return rows_[x].test(y); }
  const Row& section(long x) const { return rows_[x]; }  // up-set of x
  const Rational& phi(long x) const { return phi_[x]; }

 private:
  QuasiOrder(long n, std::vector<Row> rows, std::vector<Rational> phi)
      : n_(n), rows_(std::move(rows)), phi_(std::move(phi)) {}

  long n_;
  std::vector<Row> rows_;
  std::vector<Rational> phi_;
};

/// Exact infimum of the weight over the up-set of v (v included, so this
/// is always well defined and at most phi(v)).
Rational section_infimum(const QuasiOrder& q, long v);

/// v is weight-maximal when nothing above it has strictly smaller weight,
/// i.e. phi(v) equals the up-set infimum.
bool is_weight_maximal(const QuasiOrder& q, long v);

/// One step of the descent: from v, move to the least-indexed element of
/// the up-set whose weight is minimal among those strictly below the
/// midpoint (phi(v) + inf) / 2.  Records of the walk end in a maximal
/// element dominating the start.
struct DescentStep {
  long from;
  long to;
  Rational phi_from;
  Rational floor_from;  // up-set infimum at `from`
  Rational threshold;
  Rational phi_to;
};

struct MaximalReport {
  long start;
  long element;
  std::vector<long> chain;  // start, ..., element
  std::vector<DescentStep> steps;
};

MaximalReport maximal_element(const QuasiOrder& q, long start);

/// All weight-maximal elements, found by a direct definitional scan; the
/// independent check against maximal_element.
std::vector<long> weight_maximal_set(const QuasiOrder& q);

/// Raw strict-order input: lt[x] holds the bits y with x < y.  The weight
/// is optional; when absent, validated orders synthesize phi(x) = |{y :
/// x < y}|, which strictly decreases along any strict step.
struct StrictOrderData {
  long n = 0;
  std::vector<Row> lt;
  std::optional<std::vector<Rational>> phi;
};

/// An irreflexive transitive relation, optionally with a weight that
/// strictly decreases along it.  Laws: irreflexivity, transitivity,
/// weight-strictly-decreasing (only when a weight is supplied).
class StrictOrder {
 public:
  static std::variant<StrictOrder, ValidationReport> validate(StrictOrderData d);

  long size() const { return closure_.size(); }
  bool lt(long x, long y) const { return rows_[x].test(y); }
  /// Reflexive closure paired with the (given or synthesized) weight.
  const QuasiOrder& closure() const { return closure_; }

 private:
  StrictOrder(std::vector<Row> rows, QuasiOrder closure)
      : rows_(std::move(rows)), closure_(std::move(closure)) {}

  std::vector<Row> rows_;
  QuasiOrder closure_;
};

struct ZornReport {
  MaximalReport descent;
  bool strict_section_empty;  // nothing strictly above the element
};

/// Maximal element above `start` in the strict sense, obtained by running
/// the weight descent on the reflexive closure and re-checking that the
/// result has an empty strict up-set.
ZornReport zorn_maximal(const StrictOrder& s, long start);

}  // namespace ultra
