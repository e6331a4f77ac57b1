#include "ultra/order.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "ultra/errors.hpp"

namespace ultra {
namespace {

void check_shape(long n, const std::vector<Row>& rows, const char* what) {
  if (n < 1) throw ArgError(std::string(what) + " needs at least one element");
  if (static_cast<long>(rows.size()) != n) {
    throw ArgError(std::string(what) + " has " + std::to_string(rows.size()) + " rows, expected " +
                   std::to_string(n));
  }
  for (const auto& r : rows) {
    if (static_cast<long>(r.size()) != n) throw ArgError(std::string(what) + " row width mismatch");
  }
}

void check_phi(long n, const std::vector<Rational>& phi) {
  if (static_cast<long>(phi.size()) != n) {
    throw ArgError("weight vector has " + std::to_string(phi.size()) + " entries, expected " +
                   std::to_string(n));
  }
  for (long i = 0; i < n; ++i) {
    if (phi[i].is_negative()) {
      throw ArgError("negative weight " + phi[i].str() + " at element " + std::to_string(i));
    }
  }
}

// Lexicographically smallest (x, y, z) with x~y, y~z but not x~z.
std::optional<std::array<long, 3>> transitivity_gap(const std::vector<Row>& rows, long n) {
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      if (!rows[x].test(y)) continue;
      Row missing = rows[y] & ~rows[x];
      if (missing.any()) {
        return std::array<long, 3>{x, y, static_cast<long>(missing.find_first())};
      }
    }
  }
  return std::nullopt;
}

void check_element(long i, long n) {
  if (i < 0 || i >= n) throw ArgError("element index " + std::to_string(i) + " out of range");
}

}  // namespace

std::variant<QuasiOrder, ValidationReport> QuasiOrder::validate(QuasiOrderData d) {
  check_shape(d.n, d.leq, "quasi-order");
  check_phi(d.n, d.phi);
  ValidationReport rep;

  for (long x = 0; x < d.n; ++x) {
    if (!d.leq[x].test(x)) {
      rep.add("reflexivity", {x}, "element " + std::to_string(x) + " is not below itself");
      break;
    }
  }
  if (auto gap = transitivity_gap(d.leq, d.n)) {
    const auto [x, y, z] = *gap;
    rep.add("transitivity", {x, y, z},
            std::to_string(x) + " <= " + std::to_string(y) + " <= " + std::to_string(z) +
                " but the outer pair is unrelated");
  }
  [&] {
    for (long x = 0; x < d.n; ++x) {
      for (long y = 0; y < d.n; ++y) {
        if (d.leq[x].test(y) && d.phi[x] < d.phi[y]) {
          rep.add("weight-decreasing", {x, y},
                  "phi rises from " + d.phi[x].str() + " to " + d.phi[y].str() + " along " +
                      std::to_string(x) + " <= " + std::to_string(y));
          return;
        }
      }
    }
  }();

  if (!rep.ok()) return rep;
  return QuasiOrder(d.n, std::move(d.leq), std::move(d.phi));
}

Rational section_infimum(const QuasiOrder& q, long v) {
  check_element(v, q.size());
  Rational best = q.phi(v);
  const Row& sec = q.section(v);
  for (auto w = sec.find_first(); w != Row::npos; w = sec.find_next(w)) {
    if (q.phi(w) < best) best = q.phi(w);
  }
  return best;
}

bool is_weight_maximal(const QuasiOrder& q, long v) {
  return q.phi(v) == section_infimum(q, v);
}

MaximalReport maximal_element(const QuasiOrder& q, long start) {
  check_element(start, q.size());
  MaximalReport rep;
  rep.start = start;
  rep.chain = {start};

  long v = start;
  // The walk halves the gap phi(v) - inf each step and lands on an
  // element realizing the up-set minimum, which is itself maximal; in
  // fact it stops after at most one strict move.  The guard is paranoia.
  for (long guard = 0; guard <= 2 * q.size() + 2; ++guard) {
    const Rational floor = section_infimum(q, v);
    if (q.phi(v) == floor) {
      rep.element = v;
      return rep;
    }
    const Rational threshold = (q.phi(v) + floor) / Rational(2);
    long next = -1;
    const Row& sec = q.section(v);
    for (auto w = sec.find_first(); w != Row::npos; w = sec.find_next(w)) {
      if (q.phi(w) < threshold && (next < 0 || q.phi(w) < q.phi(next))) next = static_cast<long>(w);
    }
    if (next < 0) throw std::logic_error("descent found no successor below the threshold");
    rep.steps.push_back({v, next, q.phi(v), floor, threshold, q.phi(next)});
    rep.chain.push_back(next);
    v = next;
  }
  throw std::logic_error("descent failed to terminate");
}

std::vector<long> weight_maximal_set(const QuasiOrder& q) {
  std::vector<long> out;
  for (long v = 0; v < q.size(); ++v) {
    bool maximal = true;
    const Row& sec = q.section(v);
    for (auto w = sec.find_first(); w != Row::npos; w = sec.find_next(w)) {
      if (q.phi(w) != q.phi(v)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(v);
  }
  return out;
}

std::variant<StrictOrder, ValidationReport> StrictOrder::validate(StrictOrderData d) {
  check_shape(d.n, d.lt, "strict order");
  if (d.phi) check_phi(d.n, *d.phi);
  ValidationReport rep;

  for (long x = 0; x < d.n; ++x) {
    if (d.lt[x].test(x)) {
      rep.add("irreflexivity", {x}, "element " + std::to_string(x) + " is strictly below itself");
      break;
    }
  }
  if (auto gap = transitivity_gap(d.lt, d.n)) {
    const auto [x, y, z] = *gap;
    rep.add("transitivity", {x, y, z},
            std::to_string(x) + " < " + std::to_string(y) + " < " + std::to_string(z) +
                " but the outer pair is unrelated");
  }
  if (d.phi) {
    [&] {
      for (long x = 0; x < d.n; ++x) {
        for (long y = 0; y < d.n; ++y) {
          if (d.lt[x].test(y) && !((*d.phi)[x] > (*d.phi)[y])) {
            rep.add("weight-strictly-decreasing", {x, y},
                    "phi does not drop from " + (*d.phi)[x].str() + " along " + std::to_string(x) +
                        " < " + std::to_string(y));
            return;
          }
        }
      }
    }();
  }
  if (!rep.ok()) return rep;

  std::vector<Rational> phi;
  if (d.phi) {
    phi = std::move(*d.phi);
  } else {
    phi.reserve(d.n);
    for (long x = 0; x < d.n; ++x) {
      phi.push_back(Rational(static_cast<long>(d.lt[x].count())));
    }
  }
  QuasiOrderData cd;
  cd.n = d.n;
  cd.leq = d.lt;
  for (long x = 0; x < d.n; ++x) cd.leq[x].set(x);
  cd.phi = std::move(phi);
  auto closed = QuasiOrder::validate(std::move(cd));
  if (std::holds_alternative<ValidationReport>(closed)) {
    throw std::logic_error("reflexive closure of a validated strict order failed validation");
  }
  return StrictOrder(std::move(d.lt), std::move(std::get<QuasiOrder>(closed)));
}

ZornReport zorn_maximal(const StrictOrder& s, long start) {
  ZornReport rep{maximal_element(s.closure(), start), false};
  rep.strict_section_empty = true;
  const long v = rep.descent.element;
  for (long y = 0; y < s.size(); ++y) {
    if (s.lt(v, y)) {
      rep.strict_section_empty = false;
      break;
    }
  }
  if (!rep.strict_section_empty) {
    throw std::logic_error("descent result has a nonempty strict up-set");
  }
  return rep;
}

}  // namespace ultra
