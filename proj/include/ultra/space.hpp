#pragma once

#include <boost/dynamic_bitset.hpp>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ultra/rational.hpp"
#include "ultra/report.hpp"

namespace ultra {

/// Set of point indices of a finite space, one bit per point.
using PointSet = boost::dynamic_bitset<>;

std::vector<long> set_to_indices(const PointSet& s);

/// Labeled square matrix of exact distances.  Only shape-level facts are
/// guaranteed here (square, nonempty, distinct labels, nonnegative
/// entries); the metric axioms are established by Space::validate.
class DistanceMatrix {
 public:
  static DistanceMatrix create(std::vector<std::string> labels, std::vector<Rational> entries);

  long size() const { return static_cast<long>(labels_.size()); }
  const Rational& at(long i, long j) const { return entries_[i * size() + j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Rational>& entries() const { return entries_; }

  /// Throws ArgError when the label is unknown.
  long index_of(std::string_view label) const;

 private:
  DistanceMatrix(std::vector<std::string> labels, std::vector<Rational> entries)
      : labels_(std::move(labels)), entries_(std::move(entries)) {}

  std::vector<std::string> labels_;
  std::vector<Rational> entries_;
};

enum class MetricKind { Ultrametric, Metric };

/// A distance matrix that passed axiom validation.  Cheap to copy; the
/// validated data (including a rank-compressed view of the distance
/// values used by the ball machinery) is shared immutably.
class Space {
 public:
  /// Checks the axioms for the requested kind and either returns a Space
  /// or a report naming every violated law with its smallest witness.
  /// Laws checked: diagonal-zero, positivity, symmetry, and either the
  /// strong triangle inequality (Ultrametric) or the ordinary one (Metric).
  static std::variant<Space, ValidationReport> validate(DistanceMatrix m,
                                                        MetricKind kind = MetricKind::Ultrametric);

  const DistanceMatrix& matrix() const { return data_->m; }
  MetricKind kind() const { return data_->kind; }
  long size() const { return data_->m.size(); }
  const std::vector<std::string>& labels() const { return data_->m.labels(); }
  const Rational& dist(long i, long j) const { return data_->m.at(i, j); }

  /// Sorted list of distinct distance values; values()[0] is always 0.
  const std::vector<Rational>& values() const { return data_->values; }
  /// Index of dist(i, j) within values().
  int rank(long i, long j) const { return data_->ranks[i * size() + j]; }
  /// Largest index k with values()[k] <= r (r must be nonnegative).
  int radius_rank(const Rational& r) const;

  bool same_space(const Space& other) const { return data_ == other.data_; }

 private:
  struct Data {
    DistanceMatrix m;
    MetricKind kind;
    std::vector<Rational> values;
    std::vector<int> ranks;
  };

  explicit Space(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
};

/// Outcome of probing one oriented triple (x, y, z).
///   Vacuous        d(x,y) = d(y,z), so the triple says nothing
///   Holds          d(x,y) != d(y,z) and d(x,z) = max(d(x,y), d(y,z))
///   CounterWitness d(x,y) != d(y,z) but d(x,z) misses the max
/// CounterWitness on some orientation certifies the matrix is not
/// ultrametric; validation diagnostics lean on this.
enum class IsoscelesResult { Vacuous, Holds, CounterWitness };

IsoscelesResult isosceles_check(const DistanceMatrix& m, long x, long y, long z);

/// Closed ball X[center, radius] in a validated ultrametric space.
struct ClosedBall {
  Space space;
  long center;
  Rational radius;
};

enum class BallRelation { Disjoint, Equal, FirstInsideSecond, SecondInsideFirst };

std::string to_string(BallRelation r);

/// Exact member set {x : d(center, x) <= radius}.
PointSet ball_members(const Space& s, long center, const Rational& radius);
PointSet ball_members(const ClosedBall& b);

/// Compares two balls of the same space by their member sets.  In a valid
/// ultrametric space non-disjoint balls are always nested; a partial
/// overlap (or non-disjoint equal-radius balls with different members)
/// would contradict validation and raises std::logic_error.
BallRelation ball_compare(const ClosedBall& a, const ClosedBall& b);

/// True when X[y, b.radius] has exactly the members of b.  y must be a
/// member of b (ArgError otherwise).  Always true in a valid space.
bool recenter_invariance(const ClosedBall& b, long y);

/// Requires members(b1) to be a proper subset of members(b2) (ArgError
/// otherwise) and reports whether b1.radius < b2.radius.
bool strict_inclusion_smaller_radius(const ClosedBall& b1, const ClosedBall& b2);

struct ChainIntersection {
  PointSet members;
  long witness;        // lowest member index
  long distinct_balls; // chain length after dropping consecutive duplicates
};

/// Intersects a descending chain B0 >= B1 >= ... of balls of one space.
/// Consecutive balls with identical member sets are collapsed before the
/// intersection is taken; `distinct_balls` reports the reduced length.
/// ArgError when the chain is empty or mixes spaces.  A chain that fails
/// to descend raises PreconditionError("descending-chain", {i}) naming the
/// first ball not contained in its predecessor.
/// The result is nonempty: the last center always survives.
ChainIntersection intersect_ball_chain(const std::vector<ClosedBall>& chain);

}  // namespace ultra
