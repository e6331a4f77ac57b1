#include "ultra/json_io.hpp"

#include "ultra/errors.hpp"

namespace ultra::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected an object with a '" + std::string(key) + "' field");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field '" + std::string(key) + "'");
  return *it;
}

long long_field(const json& j, const char* key) {
  const json& f = field(j, key);
  if (!f.is_number_integer()) throw ParseError("field '" + std::string(key) + "' must be an integer");
  return f.get<long>();
}

}  // namespace

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("input is not valid JSON");
  return j;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational::parse(j.dump());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError("expected a rational as \"num/den\" or integer, got " + j.dump());
}

mpz_class mpz_from_json(const json& j) {
  std::string text;
  if (j.is_number_integer()) {
    text = j.dump();
  } else if (j.is_string()) {
    text = j.get<std::string>();
  } else {
    throw ParseError("expected an integer, got " + j.dump());
  }
  mpz_class z;
  if (text.empty() || z.set_str(text, 10) != 0) {
    throw ParseError("malformed integer '" + text + "'");
  }
  return z;
}

DistanceMatrix space_from_json(const json& j) {
  const json& jl = field(j, "labels");
  const json& jd = field(j, "dist");
  if (!jl.is_array() || !jd.is_array()) throw ParseError("'labels' and 'dist' must be arrays");
  std::vector<std::string> labels;
  for (const auto& l : jl) {
    if (!l.is_string()) throw ParseError("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  const size_t n = labels.size();
  if (jd.size() != n) throw ParseError("'dist' must have one row per label");
  std::vector<Rational> entries;
  entries.reserve(n * n);
  for (const auto& row : jd) {
    if (!row.is_array() || row.size() != n) throw ParseError("'dist' rows must have one entry per label");
    for (const auto& e : row) entries.push_back(rational_from_json(e));
  }
  return DistanceMatrix::create(std::move(labels), std::move(entries));
}

json space_to_json(const DistanceMatrix& m) {
  json labels = json::array();
  for (const auto& l : m.labels()) labels.push_back(l);
  json dist = json::array();
  for (long i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (long j2 = 0; j2 < m.size(); ++j2) row.push_back(m.at(i, j2).str());
    dist.push_back(std::move(row));
  }
  return json{{"labels", std::move(labels)}, {"dist", std::move(dist)}};
}

std::vector<Rational> phi_from_json(const json& j, long n) {
  const json& jp = field(j, "phi");
  if (!jp.is_array() || static_cast<long>(jp.size()) != n) {
    throw ParseError("'phi' must be an array with one entry per element");
  }
  std::vector<Rational> phi;
  for (const auto& e : jp) phi.push_back(rational_from_json(e));
  return phi;
}

namespace {

std::vector<Row> rows_from_json(const json& jr, long n, const char* key) {
  if (!jr.is_array() || static_cast<long>(jr.size()) != n) {
    throw ParseError("'" + std::string(key) + "' must be an n-by-n 0/1 matrix");
  }
  std::vector<Row> rows(n, Row(n));
  for (long x = 0; x < n; ++x) {
    const json& row = jr[x];
    if (!row.is_array() || static_cast<long>(row.size()) != n) {
      throw ParseError("'" + std::string(key) + "' must be an n-by-n 0/1 matrix");
    }
    for (long y = 0; y < n; ++y) {
      if (!row[y].is_number_integer()) throw ParseError("relation entries must be 0 or 1");
      const long b = row[y].get<long>();
      if (b != 0 && b != 1) throw ParseError("relation entries must be 0 or 1");
      if (b) rows[x].set(y);
    }
  }
  return rows;
}

}  // namespace

bool order_json_is_strict(const json& j) {
  if (!j.is_object()) throw ParseError("expected an order object");
  const bool strict = j.contains("lt");
  if (strict == j.contains("leq")) {
    throw ParseError("order needs exactly one of 'leq' or 'lt'");
  }
  return strict;
}

QuasiOrderData quasi_order_from_json(const json& j) {
  QuasiOrderData d;
  d.n = long_field(j, "n");
  if (d.n < 1) throw ParseError("'n' must be >= 1");
  d.leq = rows_from_json(field(j, "leq"), d.n, "leq");
  d.phi = phi_from_json(j, d.n);
  return d;
}

StrictOrderData strict_order_from_json(const json& j) {
  StrictOrderData d;
  d.n = long_field(j, "n");
  if (d.n < 1) throw ParseError("'n' must be >= 1");
  d.lt = rows_from_json(field(j, "lt"), d.n, "lt");
  if (j.contains("phi")) d.phi = phi_from_json(j, d.n);
  return d;
}

std::vector<long> map_from_json(const json& j, long n) {
  const json& ji = field(j, "image");
  if (!ji.is_array() || static_cast<long>(ji.size()) != n) {
    throw ParseError("'image' must list one point index per point");
  }
  std::vector<long> image;
  for (const auto& e : ji) {
    if (!e.is_number_integer()) throw ParseError("'image' entries must be point indices");
    image.push_back(e.get<long>());
  }
  return image;
}

Dendrogram dendrogram_from_json(const json& j) {
  Dendrogram d;
  const json& jl = field(j, "leaves");
  if (!jl.is_array()) throw ParseError("'leaves' must be an array");
  for (const auto& l : jl) {
    if (!l.is_string()) throw ParseError("leaves must be strings");
    d.leaves.push_back(l.get<std::string>());
  }
  const json& jm = field(j, "merges");
  if (!jm.is_array()) throw ParseError("'merges' must be an array");
  for (const auto& m : jm) {
    if (!m.is_array() || m.size() != 3 || !m[0].is_number_integer() || !m[1].is_number_integer()) {
      throw ParseError("each merge must be [left, right, height]");
    }
    d.merges.push_back({m[0].get<long>(), m[1].get<long>(), rational_from_json(m[2])});
  }
  return d;
}

std::vector<std::pair<std::string, Rational>> chain_from_json(const json& j) {
  const json& jc = field(j, "chain");
  if (!jc.is_array()) throw ParseError("'chain' must be an array");
  std::vector<std::pair<std::string, Rational>> out;
  for (const auto& b : jc) {
    const json& c = field(b, "center");
    if (!c.is_string()) throw ParseError("ball centers must be point labels");
    out.emplace_back(c.get<std::string>(), rational_from_json(field(b, "radius")));
  }
  return out;
}

PolySpec poly_spec_from_json(const json& j) {
  PolySpec spec;
  spec.p = long_field(j, "p");
  spec.precision = static_cast<int>(long_field(j, "precision"));
  const json& jp = field(j, "poly");
  if (!jp.is_array() || jp.empty()) throw ParseError("'poly' must be a nonempty coefficient array");
  for (const auto& c : jp) spec.coeffs.push_back(mpz_from_json(c));
  spec.x0 = mpz_from_json(field(j, "x0"));
  if (j.contains("mode")) {
    const json& m = j["mode"];
    if (m == "newton") {
      spec.mode = PolySpec::Mode::Newton;
    } else if (m == "affine") {
      spec.mode = PolySpec::Mode::Affine;
    } else {
      throw ParseError("'mode' must be \"newton\" or \"affine\"");
    }
  }
  return spec;
}

json violations_to_json(const ValidationReport& rep) {
  json out = json::array();
  for (const auto& v : rep.violations) {
    out.push_back({{"law", v.law}, {"witness", v.witness}, {"detail", v.detail}});
  }
  return out;
}

json maximal_report_to_json(const MaximalReport& rep) {
  json steps = json::array();
  for (const auto& s : rep.steps) {
    steps.push_back({{"from", s.from},
                     {"to", s.to},
                     {"phi_from", s.phi_from.str()},
                     {"floor_from", s.floor_from.str()},
                     {"threshold", s.threshold.str()},
                     {"phi_to", s.phi_to.str()}});
  }
  return json{{"start", rep.start},
              {"element", rep.element},
              {"chain", rep.chain},
              {"step_count", static_cast<long>(rep.steps.size())},
              {"steps", std::move(steps)}};
}

}  // namespace ultra::io
