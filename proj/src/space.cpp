#include "ultra/space.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "ultra/errors.hpp"

namespace ultra {
namespace {

// Spaces at least this large take the spanning-tree route through
// ultrametric validation; below it a direct triple scan is just as fast.
constexpr long kTreePathMin = 300;

void check_point(long i, long n, const char* what) {
  if (i < 0 || i >= n) {
    throw ArgError(std::string(what) + " index " + std::to_string(i) + " out of range");
  }
}

// Lexicographically smallest (i, j, k) with d(i,k) > max(d(i,j), d(j,k)),
// compared through the rank matrix.  Empty when none exists.
std::vector<long> first_strong_triangle_violation(const std::vector<int>& ranks, long n) {
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      for (long k = 0; k < n; ++k) {
        const int rik = ranks[i * n + k];
        if (rik > std::max(ranks[i * n + j], ranks[j * n + k])) return {i, j, k};
      }
    }
  }
  return {};
}

// A symmetric positively-valued matrix is ultrametric exactly when every
// distance equals its bottleneck over paths, and bottlenecks are realized
// on a minimum spanning tree.  Builds the tree (dense Prim over ranks),
// then replays its edges in increasing rank order, checking every pair
// that gets connected at a merge against the merge rank.  O(n^2).
bool matches_bottleneck_closure(const std::vector<int>& ranks, long n) {
  std::vector<int> best(n);
  std::vector<long> best_from(n, 0);
  std::vector<char> used(n, 0);
  std::vector<std::pair<int, std::pair<long, long>>> edges;  // (rank, (a, b))
  edges.reserve(n - 1);
  for (long j = 0; j < n; ++j) best[j] = ranks[j];
  used[0] = 1;
  for (long round = 1; round < n; ++round) {
    long pick = -1;
    for (long j = 0; j < n; ++j) {
      if (!used[j] && (pick < 0 || best[j] < best[pick])) pick = j;
    }
    used[pick] = 1;
    edges.push_back({best[pick], {best_from[pick], pick}});
    for (long j = 0; j < n; ++j) {
      if (!used[j] && ranks[pick * n + j] < best[j]) {
        best[j] = ranks[pick * n + j];
        best_from[j] = pick;
      }
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<long> root(n);
  std::vector<std::vector<long>> members(n);
  for (long i = 0; i < n; ++i) {
    root[i] = i;
    members[i] = {i};
  }
  for (const auto& e : edges) {
    long ra = root[e.second.first];
    long rb = root[e.second.second];
    if (members[ra].size() < members[rb].size()) std::swap(ra, rb);
    for (long a : members[ra]) {
      for (long b : members[rb]) {
        if (ranks[a * n + b] != e.first) return false;
      }
    }
    for (long b : members[rb]) {
      root[b] = ra;
      members[ra].push_back(b);
    }
    members[rb].clear();
    members[rb].shrink_to_fit();
  }
  return true;
}

}  // namespace

std::vector<long> set_to_indices(const PointSet& s) {
  std::vector<long> out;
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) {
    out.push_back(static_cast<long>(i));
  }
  return out;
}

DistanceMatrix DistanceMatrix::create(std::vector<std::string> labels, std::vector<Rational> entries) {
  if (labels.empty()) throw ArgError("space must have at least one point");
  const size_t n = labels.size();
  if (entries.size() != n * n) {
    throw ArgError("distance matrix has " + std::to_string(entries.size()) + " entries, expected " +
                   std::to_string(n * n));
  }
  std::set<std::string_view> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw ArgError("empty point label");
    if (!seen.insert(l).second) throw ArgError("duplicate point label '" + l + "'");
  }
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].is_negative()) {
      throw ArgError("negative distance at entry (" + std::to_string(i / n) + ", " + std::to_string(i % n) + ")");
    }
  }
  return DistanceMatrix(std::move(labels), std::move(entries));
}

long DistanceMatrix::index_of(std::string_view label) const {
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<long>(i);
  }
  throw ArgError("unknown point label '" + std::string(label) + "'");
}

std::variant<Space, ValidationReport> Space::validate(DistanceMatrix m, MetricKind kind) {
  const long n = m.size();
  ValidationReport rep;

  for (long i = 0; i < n; ++i) {
    if (!m.at(i, i).is_zero()) {
      rep.add("diagonal-zero", {i}, "d(" + m.labels()[i] + ", " + m.labels()[i] + ") = " + m.at(i, i).str());
      break;
    }
  }
  [&] {
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < n; ++j) {
        if (i != j && m.at(i, j).is_zero()) {
          rep.add("positivity", {i, j}, "d(" + m.labels()[i] + ", " + m.labels()[j] + ") = 0 for distinct points");
          return;
        }
      }
    }
  }();
  [&] {
    for (long i = 0; i < n; ++i) {
      for (long j = i + 1; j < n; ++j) {
        if (m.at(i, j) != m.at(j, i)) {
          rep.add("symmetry", {i, j},
                  "d(" + m.labels()[i] + ", " + m.labels()[j] + ") = " + m.at(i, j).str() + " but d(" +
                      m.labels()[j] + ", " + m.labels()[i] + ") = " + m.at(j, i).str());
          return;
        }
      }
    }
  }();
  const bool structural_ok = rep.ok();

  // Rank-compress the entries: ranks[i*n+j] indexes dist(i,j) in the
  // sorted list of distinct values.  All ball machinery compares ranks.
  std::set<Rational> distinct(m.entries().begin(), m.entries().end());
  std::vector<Rational> values(distinct.begin(), distinct.end());
  std::vector<int> ranks(n * n);
  for (long i = 0; i < n * n; ++i) {
    const auto it = std::lower_bound(values.begin(), values.end(), m.entries()[i]);
    ranks[i] = static_cast<int>(it - values.begin());
  }

  if (kind == MetricKind::Ultrametric) {
    std::vector<long> w;
    if (structural_ok && n >= kTreePathMin && matches_bottleneck_closure(ranks, n)) {
      // proven ultrametric, no witness to look for
    } else {
      w = first_strong_triangle_violation(ranks, n);
    }
    if (!w.empty()) {
      const long i = w[0], j = w[1], k = w[2];
      rep.add("strong-triangle", w,
              "d(" + m.labels()[i] + ", " + m.labels()[k] + ") = " + m.at(i, k).str() + " exceeds max(" +
                  m.at(i, j).str() + ", " + m.at(j, k).str() + ")");
    }
  } else {
    [&] {
      for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
          for (long k = 0; k < n; ++k) {
            if (m.at(i, j) + m.at(j, k) < m.at(i, k)) {
              rep.add("triangle", {i, j, k},
                      "d(" + m.labels()[i] + ", " + m.labels()[k] + ") = " + m.at(i, k).str() + " exceeds " +
                          m.at(i, j).str() + " + " + m.at(j, k).str());
              return;
            }
          }
        }
      }
    }();
  }

  if (!rep.ok()) return rep;
  auto data = std::make_shared<Data>(Data{std::move(m), kind, std::move(values), std::move(ranks)});
  return Space(std::move(data));
}

int Space::radius_rank(const Rational& r) const {
  const auto& vals = data_->values;
  const auto it = std::upper_bound(vals.begin(), vals.end(), r);
  return static_cast<int>(it - vals.begin()) - 1;
}

IsoscelesResult isosceles_check(const DistanceMatrix& m, long x, long y, long z) {
  const long n = m.size();
  check_point(x, n, "point");
  check_point(y, n, "point");
  check_point(z, n, "point");
  const Rational& xy = m.at(x, y);
  const Rational& yz = m.at(y, z);
  if (xy == yz) return IsoscelesResult::Vacuous;
  return m.at(x, z) == max(xy, yz) ? IsoscelesResult::Holds : IsoscelesResult::CounterWitness;
}

std::string to_string(BallRelation r) {
  switch (r) {
    case BallRelation::Disjoint: return "disjoint";
    case BallRelation::Equal: return "equal";
    case BallRelation::FirstInsideSecond: return "first-inside-second";
    case BallRelation::SecondInsideFirst: return "second-inside-first";
  }
  throw std::logic_error("unreachable");
}

PointSet ball_members(const Space& s, long center, const Rational& radius) {
  if (s.kind() != MetricKind::Ultrametric) throw ArgError("balls require an ultrametric space");
  check_point(center, s.size(), "center");
  if (radius.is_negative()) throw ArgError("negative ball radius " + radius.str());
  const long n = s.size();
  const int rr = s.radius_rank(radius);
  PointSet out(n);
  for (long i = 0; i < n; ++i) {
    if (s.rank(center, i) <= rr) out.set(i);
  }
  return out;
}

PointSet ball_members(const ClosedBall& b) { return ball_members(b.space, b.center, b.radius); }

BallRelation ball_compare(const ClosedBall& a, const ClosedBall& b) {
  if (!a.space.same_space(b.space)) throw ArgError("balls live in different spaces");
  const PointSet ma = ball_members(a);
  const PointSet mb = ball_members(b);
  if (!ma.intersects(mb)) return BallRelation::Disjoint;
  if (ma == mb) return BallRelation::Equal;
  if (a.radius == b.radius) {
    throw std::logic_error("non-disjoint equal-radius balls with different members in a validated space");
  }
  if (ma.is_subset_of(mb)) return BallRelation::FirstInsideSecond;
  if (mb.is_subset_of(ma)) return BallRelation::SecondInsideFirst;
  throw std::logic_error("balls overlap without nesting in a validated space");
}

bool recenter_invariance(const ClosedBall& b, long y) {
  const PointSet mb = ball_members(b);
  check_point(y, b.space.size(), "point");
  if (!mb.test(y)) throw ArgError("point " + std::to_string(y) + " is not a member of the ball");
  return ball_members(b.space, y, b.radius) == mb;
}

bool strict_inclusion_smaller_radius(const ClosedBall& b1, const ClosedBall& b2) {
  if (!b1.space.same_space(b2.space)) throw ArgError("balls live in different spaces");
  const PointSet m1 = ball_members(b1);
  const PointSet m2 = ball_members(b2);
  if (!(m1.is_subset_of(m2) && m1 != m2)) {
    throw ArgError("first ball is not properly included in the second");
  }
  return b1.radius < b2.radius;
}

ChainIntersection intersect_ball_chain(const std::vector<ClosedBall>& chain) {
  if (chain.empty()) throw ArgError("empty ball chain");
  for (size_t i = 1; i < chain.size(); ++i) {
    if (!chain[i].space.same_space(chain[0].space)) throw ArgError("chain mixes distinct spaces");
  }
  PointSet acc = ball_members(chain[0]);
  long distinct = 1;
  for (size_t i = 1; i < chain.size(); ++i) {
    const PointSet mi = ball_members(chain[i]);
    if (!mi.is_subset_of(acc)) {
      throw PreconditionError(
          "descending-chain", {static_cast<long>(i)},
          "ball " + std::to_string(i) + " is not contained in its predecessor");
    }
    if (mi != acc) ++distinct;  // collapse consecutive duplicates
    acc = mi;
  }
  return {acc, set_to_indices(acc).front(), distinct};
}

}  // namespace ultra
