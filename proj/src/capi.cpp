// C API implementation: translates between JSON documents at the
// boundary and the typed core, and maps exceptions to status codes.

#include "ultra.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <variant>

#include "json.hpp"
#include "ultra/errors.hpp"
#include "ultra/fixpoint.hpp"
#include "ultra/json_io.hpp"
#include "ultra/order.hpp"
#include "ultra/rational.hpp"
#include "ultra/space.hpp"
#include "ultra/spaces.hpp"
#include "ultra/variational.hpp"

using nlohmann::json;

struct ultra_space {
  ultra::Space s;
};

struct ultra_order {
  std::variant<ultra::QuasiOrder, ultra::StrictOrder> o;
};

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr long kHenselScanBound = 4096;

thread_local std::string t_last_error;

char* dup_cstr(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void write_out(char** out, const json& j) {
  if (out) *out = dup_cstr(j.dump());
}

const char* require(const char* p, const char* what) {
  if (!p) throw ultra::ArgError(std::string("null ") + what);
  return p;
}

ultra_status invalid(char** out, const ultra::ValidationReport& rep) {
  t_last_error = rep.violations.empty() ? "invalid input" : rep.violations.front().detail;
  write_out(out, json{{"violations", ultra::io::violations_to_json(rep)}});
  return ULTRA_INVALID;
}

template <typename F>
ultra_status guarded(char** invalid_out, F&& f) {
  try {
    return f();
  } catch (const ultra::ParseError& e) {
    t_last_error = e.what();
    return ULTRA_ERR_PARSE;
  } catch (const ultra::ArgError& e) {
    t_last_error = e.what();
    return ULTRA_ERR_ARG;
  } catch (const ultra::LimitError& e) {
    t_last_error = e.what();
    return ULTRA_ERR_LIMIT;
  } catch (const ultra::PreconditionError& e) {
    t_last_error = e.what();
    ultra::ValidationReport rep;
    rep.add(e.law, e.witness, e.what());
    return invalid(invalid_out, rep);
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return ULTRA_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return ULTRA_ERR_INTERNAL;
  }
}

std::variant<ultra::Space, ultra::ValidationReport> space_from_text(const char* text, int metric) {
  const json j = ultra::io::parse_text(require(text, "space document"));
  ultra::DistanceMatrix m = ultra::io::space_from_json(j);
  return ultra::Space::validate(std::move(m),
                                metric ? ultra::MetricKind::Metric : ultra::MetricKind::Ultrametric);
}

json labels_of(const ultra::Space& s, const ultra::PointSet& set) {
  json out = json::array();
  for (long i : ultra::set_to_indices(set)) out.push_back(s.labels()[i]);
  return out;
}

json ball_json(const ultra::Space& s, long center, const ultra::Rational& radius) {
  const ultra::PointSet m = ultra::ball_members(s, center, radius);
  return json{{"center", s.labels()[center]},
              {"radius", radius.str()},
              {"size", static_cast<long>(m.count())},
              {"members", labels_of(s, m)}};
}

long start_index(const ultra::Space& s, const char* label) {
  return label ? s.matrix().index_of(label) : 0;
}

json certificate_json(const ultra::Space& s, const ultra::DescentCertificate& cert) {
  json out = json::array();
  for (const auto& step : cert.chain) {
    out.push_back({{"center", s.labels()[step.center]}, {"radius", step.radius.str()}});
  }
  return out;
}

json padic_chain_json(const std::vector<ultra::PadicBallStep>& chain) {
  json out = json::array();
  for (const auto& step : chain) {
    out.push_back({{"center", step.center.get_str()}, {"radius", step.radius.str()}});
  }
  return out;
}

json drop_check_json(const ultra::DropCheck& c) {
  return json{{"dist", c.dist.str()}, {"drop", c.drop.str()}, {"ok", c.ok}};
}

std::variant<ultra::WeightedSpace, ultra::ValidationReport> weighted_from_text(const char* text,
                                                                               int metric) {
  const json j = ultra::io::parse_text(require(text, "weighted space document"));
  ultra::DistanceMatrix m = ultra::io::space_from_json(j);
  const long n = m.size();
  std::vector<ultra::Rational> phi = ultra::io::phi_from_json(j, n);
  auto v = ultra::Space::validate(std::move(m), metric ? ultra::MetricKind::Metric
                                                       : ultra::MetricKind::Ultrametric);
  if (auto* rep = std::get_if<ultra::ValidationReport>(&v)) return *rep;
  return ultra::WeightedSpace::create(std::move(std::get<ultra::Space>(v)), std::move(phi));
}

ultra::SelfMap map_from_text(const ultra::Space& s, const char* map_json) {
  const json j = ultra::io::parse_text(require(map_json, "map document"));
  return ultra::SelfMap::create(s, ultra::io::map_from_json(j, s.size()));
}

}  // namespace

extern "C" {

const char* ultra_version(void) { return kVersion; }

const char* ultra_last_error(void) { return t_last_error.c_str(); }

void ultra_free_str(char* s) { std::free(s); }

ultra_status ultra_space_check(const char* space_json, int metric, char** out_json) {
  return guarded(out_json, [&] {
    auto v = space_from_text(space_json, metric);
    if (auto* rep = std::get_if<ultra::ValidationReport>(&v)) return invalid(out_json, *rep);
    const ultra::Space& s = std::get<ultra::Space>(v);
    write_out(out_json, json{{"points", s.size()},
                             {"kind", metric ? "metric" : "ultrametric"},
                             {"distinct_values", static_cast<long>(s.values().size())}});
    return ULTRA_OK;
  });
}

ultra_status ultra_space_open(const char* space_json, int metric, ultra_space** out,
                              char** invalid_json) {
  return guarded(invalid_json, [&] {
    if (!out) throw ultra::ArgError("null output handle");
    auto v = space_from_text(space_json, metric);
    if (auto* rep = std::get_if<ultra::ValidationReport>(&v)) return invalid(invalid_json, *rep);
    *out = new ultra_space{std::move(std::get<ultra::Space>(v))};
    return ULTRA_OK;
  });
}

void ultra_space_close(ultra_space* s) { delete s; }

ultra_status ultra_space_to_json(const ultra_space* s, char** out_json) {
  return guarded(nullptr, [&] {
    if (!s) throw ultra::ArgError("null space handle");
    write_out(out_json, ultra::io::space_to_json(s->s.matrix()));
    return ULTRA_OK;
  });
}

ultra_status ultra_gen_discrete(long n, char** out_json) {
  return guarded(nullptr, [&] {
    write_out(out_json, ultra::io::space_to_json(ultra::discrete_space(n).matrix()));
    return ULTRA_OK;
  });
}

ultra_status ultra_gen_random(long n, uint64_t seed, char** out_json) {
  return guarded(nullptr, [&] {
    write_out(out_json, ultra::io::space_to_json(ultra::random_space(n, seed).matrix()));
    return ULTRA_OK;
  });
}

ultra_status ultra_gen_padic(long p, int precision, long max_points, char** out_json) {
  return guarded(nullptr, [&] {
    const ultra::PAdicModel m = ultra::PAdicModel::create(p, precision);
    write_out(out_json, ultra::io::space_to_json(ultra::padic_space(m, max_points).matrix()));
    return ULTRA_OK;
  });
}

ultra_status ultra_gen_dendrogram(const char* dendrogram_json, char** out_json) {
  return guarded(nullptr, [&] {
    const json j = ultra::io::parse_text(require(dendrogram_json, "dendrogram document"));
    const ultra::Space s = ultra::dendrogram_to_space(ultra::io::dendrogram_from_json(j));
    write_out(out_json, ultra::io::space_to_json(s.matrix()));
    return ULTRA_OK;
  });
}

ultra_status ultra_ball_members(const ultra_space* s, const char* center, const char* radius,
                                char** out_json) {
  return guarded(nullptr, [&] {
    if (!s) throw ultra::ArgError("null space handle");
    const long c = s->s.matrix().index_of(require(center, "center label"));
    const ultra::Rational r = ultra::Rational::parse(require(radius, "radius"));
    write_out(out_json, ball_json(s->s, c, r));
    return ULTRA_OK;
  });
}

ultra_status ultra_ball_compare(const ultra_space* s, const char* center1, const char* radius1,
                                const char* center2, const char* radius2, char** out_json) {
  return guarded(nullptr, [&] {
    if (!s) throw ultra::ArgError("null space handle");
    const ultra::ClosedBall b1{s->s, s->s.matrix().index_of(require(center1, "center label")),
                               ultra::Rational::parse(require(radius1, "radius"))};
    const ultra::ClosedBall b2{s->s, s->s.matrix().index_of(require(center2, "center label")),
                               ultra::Rational::parse(require(radius2, "radius"))};
    const ultra::BallRelation rel = ultra::ball_compare(b1, b2);
    write_out(out_json, json{{"relation", ultra::to_string(rel)},
                             {"first", ball_json(s->s, b1.center, b1.radius)},
                             {"second", ball_json(s->s, b2.center, b2.radius)}});
    return ULTRA_OK;
  });
}

ultra_status ultra_chain_intersect(const ultra_space* s, const char* chain_json, char** out_json) {
  return guarded(out_json, [&] {
    if (!s) throw ultra::ArgError("null space handle");
    const json j = ultra::io::parse_text(require(chain_json, "chain document"));
    std::vector<ultra::ClosedBall> chain;
    for (const auto& [label, radius] : ultra::io::chain_from_json(j)) {
      chain.push_back({s->s, s->s.matrix().index_of(label), radius});
    }
    const ultra::ChainIntersection res = ultra::intersect_ball_chain(chain);
    write_out(out_json, json{{"balls", static_cast<long>(chain.size())},
                             {"distinct_balls", res.distinct_balls},
                             {"size", static_cast<long>(res.members.count())},
                             {"intersection", labels_of(s->s, res.members)},
                             {"witness", s->s.labels()[res.witness]}});
    return ULTRA_OK;
  });
}

ultra_status ultra_order_check(const char* order_json, char** out_json) {
  return guarded(out_json, [&] {
    const json j = ultra::io::parse_text(require(order_json, "order document"));
    if (ultra::io::order_json_is_strict(j)) {
      ultra::StrictOrderData d = ultra::io::strict_order_from_json(j);
      const bool given = d.phi.has_value();
      auto v = ultra::StrictOrder::validate(std::move(d));
      if (auto* rep = std::get_if<ultra::ValidationReport>(&v)) return invalid(out_json, *rep);
      write_out(out_json, json{{"elements", std::get<ultra::StrictOrder>(v).size()},
                               {"kind", "strict-order"},
                               {"weight", given ? "given" : "synthesized"}});
      return ULTRA_OK;
    }
    auto v = ultra::QuasiOrder::validate(ultra::io::quasi_order_from_json(j));
    if (auto* rep = std::get_if<ultra::ValidationReport>(&v)) return invalid(out_json, *rep);
    write_out(out_json, json{{"elements", std::get<ultra::QuasiOrder>(v).size()},
                             {"kind", "quasi-order"},
                             {"weight", "given"}});
    return ULTRA_OK;
  });
}

ultra_status ultra_order_open(const char* order_json, ultra_order** out, char** invalid_json) {
  return guarded(invalid_json, [&] {
    if (!out) throw ultra::ArgError("null output handle");
    const json j = ultra::io::parse_text(require(order_json, "order document"));
    if (ultra::io::order_json_is_strict(j)) {
      auto v = ultra::StrictOrder::validate(ultra::io::strict_order_from_json(j));
      if (auto* rep = std::get_if<ultra::ValidationReport>(&v)) return invalid(invalid_json, *rep);
      *out = new ultra_order{std::move(std::get<ultra::StrictOrder>(v))};
      return ULTRA_OK;
    }
    auto v = ultra::QuasiOrder::validate(ultra::io::quasi_order_from_json(j));
    if (auto* rep = std::get_if<ultra::ValidationReport>(&v)) return invalid(invalid_json, *rep);
    *out = new ultra_order{std::move(std::get<ultra::QuasiOrder>(v))};
    return ULTRA_OK;
  });
}

void ultra_order_close(ultra_order* o) { delete o; }

namespace {

json maximal_payload(const ultra::QuasiOrder& q, const ultra::MaximalReport& rep, bool recheck) {
  json out = ultra::io::maximal_report_to_json(rep);
  out["phi"] = q.phi(rep.element).str();
  out["floor"] = ultra::section_infimum(q, rep.element).str();
  out["maximal"] = true;
  if (recheck) {
    bool steps_valid = true;
    for (const auto& s : rep.steps) {
      const ultra::Rational floor = ultra::section_infimum(q, s.from);
      steps_valid = steps_valid && q.leq(s.from, s.to) && floor == s.floor_from &&
                    s.threshold == (s.phi_from + floor) / ultra::Rational(2) &&
                    s.phi_to < s.threshold;
    }
    const std::vector<long> brute = ultra::weight_maximal_set(q);
    const bool in_brute = std::find(brute.begin(), brute.end(), rep.element) != brute.end();
    out["recheck"] = json{{"steps_valid", steps_valid},
                          {"definitional_scan", in_brute},
                          {"maximal_set_size", static_cast<long>(brute.size())}};
  }
  return out;
}

}  // namespace

ultra_status ultra_order_maximal(const ultra_order* o, long start, int recheck, char** out_json) {
  return guarded(out_json, [&] {
    if (!o) throw ultra::ArgError("null order handle");
    if (const auto* q = std::get_if<ultra::QuasiOrder>(&o->o)) {
      const ultra::MaximalReport rep = ultra::maximal_element(*q, start);
      write_out(out_json, maximal_payload(*q, rep, recheck != 0));
      return ULTRA_OK;
    }
    const auto& s = std::get<ultra::StrictOrder>(o->o);
    const ultra::ZornReport rep = ultra::zorn_maximal(s, start);
    json out = maximal_payload(s.closure(), rep.descent, recheck != 0);
    out["strict_section_empty"] = rep.strict_section_empty;
    write_out(out_json, out);
    return ULTRA_OK;
  });
}

ultra_status ultra_evp_point(const char* weighted_json, const char* start, int metric, int recheck,
                             char** out_json) {
  return guarded(out_json, [&] {
    auto wv = weighted_from_text(weighted_json, metric);
    if (auto* rep = std::get_if<ultra::ValidationReport>(&wv)) return invalid(out_json, *rep);
    const ultra::WeightedSpace& w = std::get<ultra::WeightedSpace>(wv);
    const long u = start_index(w.space(), start);
    const ultra::EvpResult res = ultra::evp_point(w, u);
    long minimality_checked = 0;
    bool minimality_holds = true;
    for (const auto& c : res.record.minimality) {
      ++minimality_checked;
      minimality_holds = minimality_holds && c.ok;
    }
    json out{{"u", w.space().labels()[u]},
             {"v", w.space().labels()[res.record.v]},
             {"phi_u", w.phi(u).str()},
             {"phi_v", w.phi(res.record.v).str()},
             {"descent", ultra::io::maximal_report_to_json(res.descent)},
             {"reachability", drop_check_json(res.record.reachability)},
             {"minimality", json{{"checked", minimality_checked}, {"holds", minimality_holds}}},
             {"ok", res.record.ok}};
    if (recheck) {
      out["recheck"] = json{{"independent_evaluation", ultra::evp_verify(w, u, res.record.v)}};
    }
    write_out(out_json, out);
    return ULTRA_OK;
  });
}

ultra_status ultra_evp_verify(const char* weighted_json, const char* u, const char* v, int metric,
                              char** out_json) {
  return guarded(out_json, [&] {
    auto wv = weighted_from_text(weighted_json, metric);
    if (auto* rep = std::get_if<ultra::ValidationReport>(&wv)) return invalid(out_json, *rep);
    const ultra::WeightedSpace& w = std::get<ultra::WeightedSpace>(wv);
    const long ui = w.space().matrix().index_of(require(u, "label for u"));
    const long vi = w.space().matrix().index_of(require(v, "label for v"));
    const ultra::EvpRecord rec = ultra::evp_evaluate(w, ui, vi);
    if (!rec.ok) {
      ultra::ValidationReport rep;
      if (!rec.reachability.ok) {
        rep.add("reachability", {ui, vi},
                "d(u, v) = " + rec.reachability.dist.str() + " exceeds the weight drop " +
                    rec.reachability.drop.str());
      }
      for (const auto& c : rec.minimality) {
        if (!c.ok) {
          rep.add("minimality", {c.from, c.to},
                  "descent from v to " + w.space().labels()[c.to] + " is still possible: d = " +
                      c.dist.str() + " within the drop " + c.drop.str());
        }
      }
      return invalid(out_json, rep);
    }
    write_out(out_json, json{{"u", w.space().labels()[ui]},
                             {"v", w.space().labels()[vi]},
                             {"ok", true},
                             {"reachability", drop_check_json(rec.reachability)},
                             {"minimality_checked", static_cast<long>(rec.minimality.size())}});
    return ULTRA_OK;
  });
}

ultra_status ultra_fixpoint(const ultra_space* s, const char* map_json, const char* start,
                            int recheck, char** out_json) {
  return guarded(out_json, [&] {
    if (!s) throw ultra::ArgError("null space handle");
    const ultra::SelfMap t = map_from_text(s->s, map_json);
    const long u = start_index(s->s, start);
    const ultra::FixResult res = ultra::ultra_fixpoint(t, u);
    json fixed = json::array();
    for (long f : res.fixed_set) fixed.push_back(s->s.labels()[f]);
    json out{{"start", s->s.labels()[u]},
             {"point", s->s.labels()[res.point]},
             {"iterations", res.iterations},
             {"certificate", certificate_json(s->s, res.cert)},
             {"fixed_set", std::move(fixed)},
             {"unique", res.unique}};
    if (recheck) {
      out["recheck"] = json{{"certificate_valid", ultra::validate_certificate(t, res.cert).ok()}};
    }
    write_out(out_json, out);
    return ULTRA_OK;
  });
}

ultra_status ultra_banach(const ultra_space* s, const char* map_json, const char* alpha,
                          const char* start, int recheck, char** out_json) {
  return guarded(out_json, [&] {
    if (!s) throw ultra::ArgError("null space handle");
    const ultra::SelfMap t = map_from_text(s->s, map_json);
    const ultra::Rational a = ultra::Rational::parse(require(alpha, "contraction factor"));
    const long u = start_index(s->s, start);
    const ultra::BanachResult res = ultra::banach_fixpoint(t, a, u);
    json orbit = json::array();
    for (long x : res.orbit) orbit.push_back(s->s.labels()[x]);
    json rate = json::array();
    for (const auto& r : res.rate) {
      rate.push_back({{"step", r.step}, {"dist", r.dist.str()}, {"bound", r.bound.str()}, {"ok", r.ok}});
    }
    json fixed = json::array();
    for (long f : res.fixed_set) fixed.push_back(s->s.labels()[f]);
    json out{{"start", s->s.labels()[u]},
             {"alpha", a.str()},
             {"point", s->s.labels()[res.point]},
             {"iterations", res.iterations},
             {"orbit", std::move(orbit)},
             {"rate", std::move(rate)},
             {"fixed_set", std::move(fixed)},
             {"unique", res.unique}};
    if (res.cert) out["certificate"] = certificate_json(s->s, *res.cert);
    if (recheck) {
      json rc{{"fixed_point_confirmed", t.apply(res.point) == res.point},
              {"certificate_valid", nullptr}};
      if (res.cert) rc["certificate_valid"] = ultra::validate_certificate(t, *res.cert).ok();
      out["recheck"] = rc;
    }
    write_out(out_json, out);
    return ULTRA_OK;
  });
}

ultra_status ultra_hensel(const char* poly_json, int recheck, char** out_json) {
  return guarded(out_json, [&] {
    const json j = ultra::io::parse_text(require(poly_json, "polynomial document"));
    const ultra::PolySpec spec = ultra::io::poly_spec_from_json(j);
    const ultra::PAdicModel m = ultra::PAdicModel::create(spec.p, spec.precision);
    const ultra::PadicFixResult res = ultra::padic_poly_fixpoint(spec);
    json out{{"p", spec.p},
             {"precision", spec.precision},
             {"mode", spec.mode == ultra::PolySpec::Mode::Newton ? "newton" : "affine"},
             {"seed", spec.x0.get_str()},
             {"point", res.point.get_str()},
             {"iterations", res.iterations},
             {"chain", padic_chain_json(res.chain)}};
    if (spec.mode == ultra::PolySpec::Mode::Newton) {
      mpz_class acc = 0;
      for (auto it = spec.coeffs.rbegin(); it != spec.coeffs.rend(); ++it) {
        acc = (acc * res.point + *it) % m.modulus();
      }
      if (acc < 0) acc += m.modulus();
      out["residual"] = acc.get_str();
    }
    if (recheck) {
      json rc{{"certificate_valid", ultra::validate_padic_certificate(m, res.chain).ok()}};
      if (m.modulus() <= kHenselScanBound) {
        long hits = 0;
        bool only_point = true;
        for (mpz_class x = 0; x < m.modulus(); ++x) {
          bool hit = false;
          if (spec.mode == ultra::PolySpec::Mode::Newton) {
            mpz_class fx = 0;
            for (auto it = spec.coeffs.rbegin(); it != spec.coeffs.rend(); ++it) {
              fx = (fx * x + *it) % m.modulus();
            }
            if (fx < 0) fx += m.modulus();
            hit = fx == 0 && m.reduce(x - spec.x0) % spec.p == 0;
          } else {
            const mpz_class a = spec.coeffs.size() < 2 ? mpz_class(0) : spec.coeffs[1];
            const mpz_class b = spec.coeffs.empty() ? mpz_class(0) : spec.coeffs[0];
            hit = m.reduce(a * x + b) == x;
          }
          if (hit) {
            ++hits;
            only_point = only_point && x == res.point;
          }
        }
        rc["carrier_scan"] = json{{"hits", hits}, {"only_the_reported_point", only_point}};
      } else {
        rc["carrier_scan"] = "skipped";
      }
      out["recheck"] = rc;
    }
    write_out(out_json, out);
    return ULTRA_OK;
  });
}

}  // extern "C"
