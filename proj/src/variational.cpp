#include "ultra/variational.hpp"

#include <stdexcept>

#include "ultra/errors.hpp"

namespace ultra {

WeightedSpace WeightedSpace::create(Space space, std::vector<Rational> phi) {
  if (static_cast<long>(phi.size()) != space.size()) {
    throw ArgError("weight vector has " + std::to_string(phi.size()) + " entries for " +
                   std::to_string(space.size()) + " points");
  }
  for (size_t i = 0; i < phi.size(); ++i) {
    if (phi[i].is_negative()) {
      throw ArgError("negative weight " + phi[i].str() + " at point " + std::to_string(i));
    }
  }
  return WeightedSpace(std::move(space), std::move(phi));
}

bool brondsted_leq(const WeightedSpace& w, long x, long y) {
  if (x < 0 || x >= w.size() || y < 0 || y >= w.size()) {
    throw ArgError("point index out of range");
  }
  return w.space().dist(x, y) <= w.phi(x) - w.phi(y);
}

QuasiOrder brondsted_order(const WeightedSpace& w) {
  const long n = w.size();
  QuasiOrderData d;
  d.n = n;
  d.leq.assign(n, Row(n));
  d.phi = w.weights();
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      if (w.space().dist(x, y) <= w.phi(x) - w.phi(y)) d.leq[x].set(y);
    }
  }
  auto r = QuasiOrder::validate(std::move(d));
  if (std::holds_alternative<ValidationReport>(r)) {
    throw std::logic_error("order induced by a validated weighted space failed validation");
  }
  return std::move(std::get<QuasiOrder>(r));
}

EvpRecord evp_evaluate(const WeightedSpace& w, long u, long v) {
  if (u < 0 || u >= w.size() || v < 0 || v >= w.size()) {
    throw ArgError("point index out of range");
  }
  EvpRecord rec;
  rec.u = u;
  rec.v = v;
  const Rational du = w.space().dist(u, v);
  const Rational drop_u = w.phi(u) - w.phi(v);
  rec.reachability = {u, v, du, drop_u, du <= drop_u};
  rec.ok = rec.reachability.ok;
  for (long x = 0; x < w.size(); ++x) {
    if (x == v) continue;
    const Rational dv = w.space().dist(v, x);
    const Rational drop = w.phi(v) - w.phi(x);
    const bool strict = dv > drop;
    rec.minimality.push_back({v, x, dv, drop, strict});
    rec.ok = rec.ok && strict;
  }
  return rec;
}

bool evp_verify(const WeightedSpace& w, long u, long v) { return evp_evaluate(w, u, v).ok; }

EvpResult evp_point(const WeightedSpace& w, long u) {
  return evp_point(w, brondsted_order(w), u);
}

EvpResult evp_point(const WeightedSpace& w, const QuasiOrder& order, long u) {
  EvpResult res{maximal_element(order, u), {}};
  res.record = evp_evaluate(w, u, res.descent.element);
  if (!res.record.ok) {
    throw std::logic_error("descent result failed the variational inequalities");
  }
  return res;
}

std::optional<std::pair<long, long>> inf_lattice_gap(const QuasiOrder& q) {
  const long n = q.size();
  for (long a = 0; a < n; ++a) {
    for (long b = a; b < n; ++b) {
      Row lower(n);
      for (long z = 0; z < n; ++z) {
        if (q.leq(z, a) && q.leq(z, b)) lower.set(z);
      }
      if (lower.none()) continue;  // no common lower bound to top
      bool has_greatest = false;
      for (auto z = lower.find_first(); z != Row::npos && !has_greatest; z = lower.find_next(z)) {
        bool greatest = true;
        for (auto y = lower.find_first(); y != Row::npos; y = lower.find_next(y)) {
          if (!q.leq(y, z)) {
            greatest = false;
            break;
          }
        }
        has_greatest = greatest;
      }
      if (!has_greatest) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

}  // namespace ultra
