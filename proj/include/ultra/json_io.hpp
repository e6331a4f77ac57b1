#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ultra/fixpoint.hpp"
#include "ultra/order.hpp"
#include "ultra/rational.hpp"
#include "ultra/space.hpp"
#include "ultra/spaces.hpp"
#include "ultra/report.hpp"

// File formats.  All rationals travel as canonical "num/den" strings
// (plain JSON integers are accepted on input).
//
//   space       {"labels": [...], "dist": [[row], ...]}
//   weighted    space plus {"phi": [...]}
//   order       {"n": k, "leq": [[0/1 row], ...], "phi": [...]}
//               or {"n": k, "lt": [[0/1 row], ...]} with optional phi
//   map         {"image": [point indices]}
//   dendrogram  {"leaves": [...], "merges": [[left, right, height], ...]}
//   chain       {"chain": [{"center": label, "radius": r}, ...]}
//   poly        {"p": 7, "precision": 3, "poly": [c0, c1, ...],
//                "x0": n, "mode": "newton"|"affine"}

namespace ultra::io {

using nlohmann::json;

json parse_text(const std::string& text);

Rational rational_from_json(const json& j);
mpz_class mpz_from_json(const json& j);

DistanceMatrix space_from_json(const json& j);
json space_to_json(const DistanceMatrix& m);

std::vector<Rational> phi_from_json(const json& j, long n);

bool order_json_is_strict(const json& j);
QuasiOrderData quasi_order_from_json(const json& j);
StrictOrderData strict_order_from_json(const json& j);

std::vector<long> map_from_json(const json& j, long n);

Dendrogram dendrogram_from_json(const json& j);

std::vector<std::pair<std::string, Rational>> chain_from_json(const json& j);

PolySpec poly_spec_from_json(const json& j);

json violations_to_json(const ValidationReport& rep);
json maximal_report_to_json(const MaximalReport& rep);

}  // namespace ultra::io
