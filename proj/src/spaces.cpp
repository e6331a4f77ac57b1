#include "ultra/spaces.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <variant>

#include "ultra/errors.hpp"

namespace ultra {
namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

Space validate_or_die(DistanceMatrix m, const char* who) {
  auto r = Space::validate(std::move(m), MetricKind::Ultrametric);
  if (auto* s = std::get_if<Space>(&r)) return std::move(*s);
  throw std::logic_error(std::string(who) + " produced an invalid space");
}

// Bounded draw with a fixed, engine-defined reduction so that generated
// spaces are identical across standard libraries and platforms.
std::uint64_t draw(std::mt19937_64& eng, std::uint64_t bound) {
  return eng() % bound;
}

}  // namespace

PAdicModel PAdicModel::create(long p, int precision) {
  if (!is_prime(p)) throw ArgError("p = " + std::to_string(p) + " is not prime");
  if (precision < 1) throw ArgError("precision must be >= 1");
  mpz_class modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(precision));
  return PAdicModel(p, precision, std::move(modulus));
}

mpz_class PAdicModel::reduce(const mpz_class& a) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

int PAdicModel::valuation(const mpz_class& a, const mpz_class& b) const {
  if (!in_carrier(a)) throw ArgError("residue " + a.get_str() + " outside carrier");
  if (!in_carrier(b)) throw ArgError("residue " + b.get_str() + " outside carrier");
  mpz_class diff = reduce(a - b);
  if (diff == 0) return precision_;
  int v = 0;
  while (mpz_divisible_ui_p(diff.get_mpz_t(), static_cast<unsigned long>(p_))) {
    mpz_divexact_ui(diff.get_mpz_t(), diff.get_mpz_t(), static_cast<unsigned long>(p_));
    ++v;
  }
  return std::min(v, precision_);
}

Rational PAdicModel::dist(const mpz_class& a, const mpz_class& b) const {
  const int v = valuation(a, b);
  if (v == precision_) return Rational(0);
  return Rational::inverse_pow(mpz_class(p_), static_cast<unsigned long>(v));
}

Rational baire_dist(const BaireSeq& s, const BaireSeq& t) {
  const size_t ls = s.symbols.size();
  const size_t lt = t.symbols.size();
  const size_t common = std::min(ls, lt);
  for (size_t k = 0; k < common; ++k) {
    if (s.symbols[k] != t.symbols[k]) return Rational::inverse_pow(mpz_class(2), k);
  }
  if (ls == lt) return Rational(0);
  return Rational::inverse_pow(mpz_class(2), common);
}

Space dendrogram_to_space(const Dendrogram& d) {
  const long leaves = static_cast<long>(d.leaves.size());
  if (leaves < 1) throw ArgError("dendrogram needs at least one leaf");
  const long merges = static_cast<long>(d.merges.size());
  if (merges != leaves - 1) {
    throw ArgError("dendrogram with " + std::to_string(leaves) + " leaves needs " +
                   std::to_string(leaves - 1) + " merges, got " + std::to_string(merges));
  }

  std::vector<char> used(leaves + merges, 0);
  std::vector<Rational> node_height(leaves + merges, Rational(0));
  std::vector<std::vector<long>> cluster(leaves + merges);
  for (long i = 0; i < leaves; ++i) cluster[i] = {i};

  const long n = leaves;
  std::vector<Rational> entries(n * n, Rational(0));
  for (long k = 0; k < merges; ++k) {
    const auto& mg = d.merges[k];
    const long id = leaves + k;
    for (long child : {mg.left, mg.right}) {
      if (child < 0 || child >= id) {
        throw ArgError("merge " + std::to_string(k) + " references node " + std::to_string(child) +
                       " which does not exist yet");
      }
      if (used[child]) {
        throw ArgError("node " + std::to_string(child) + " used as a child twice");
      }
      used[child] = 1;
    }
    if (mg.left == mg.right) throw ArgError("merge " + std::to_string(k) + " joins a node with itself");
    if (!(Rational(0) < mg.height)) {
      throw ArgError("merge " + std::to_string(k) + " has non-positive height " + mg.height.str());
    }
    if (mg.height < node_height[mg.left] || mg.height < node_height[mg.right]) {
      throw ArgError("non-monotone heights: merge " + std::to_string(k) + " at " + mg.height.str() +
                     " is below a child merge");
    }
    node_height[id] = mg.height;
    for (long a : cluster[mg.left]) {
      for (long b : cluster[mg.right]) {
        entries[a * n + b] = mg.height;
        entries[b * n + a] = mg.height;
      }
    }
    cluster[id] = std::move(cluster[mg.left]);
    auto& right = cluster[mg.right];
    cluster[id].insert(cluster[id].end(), right.begin(), right.end());
    right.clear();
  }
  if (merges > 0) {
    // Everything except the final merge must have been consumed.
    for (long i = 0; i + 1 < leaves + merges; ++i) {
      if (!used[i]) throw ArgError("node " + std::to_string(i) + " is not connected to the root");
    }
  }

  return validate_or_die(DistanceMatrix::create(d.leaves, std::move(entries)), "dendrogram_to_space");
}

Space discrete_space(long n) {
  if (n < 1) throw ArgError("discrete space needs n >= 1");
  std::vector<std::string> labels(n);
  std::vector<Rational> entries(n * n, Rational(1));
  for (long i = 0; i < n; ++i) {
    labels[i] = std::to_string(i + 1);
    entries[i * n + i] = Rational(0);
  }
  return validate_or_die(DistanceMatrix::create(std::move(labels), std::move(entries)), "discrete_space");
}

Space random_space(long n, std::uint64_t seed) {
  if (n < 1) throw ArgError("random space needs n >= 1");
  std::mt19937_64 eng(seed);

  std::vector<Rational> heights;
  heights.reserve(n - 1);
  for (long k = 0; k + 1 < n; ++k) {
    const long denom = static_cast<long>(draw(eng, static_cast<std::uint64_t>(n))) + 1;
    heights.push_back(Rational(1, denom));
  }
  std::sort(heights.begin(), heights.end());

  Dendrogram d;
  d.leaves.resize(n);
  for (long i = 0; i < n; ++i) d.leaves[i] = std::to_string(i + 1);
  std::vector<long> active(n);
  for (long i = 0; i < n; ++i) active[i] = i;
  for (long k = 0; k + 1 < n; ++k) {
    const size_t ia = draw(eng, active.size());
    const long a = active[ia];
    active.erase(active.begin() + ia);
    const size_t ib = draw(eng, active.size());
    const long b = active[ib];
    active.erase(active.begin() + ib);
    d.merges.push_back({a, b, heights[k]});
    active.push_back(n + k);
  }
  return dendrogram_to_space(d);
}

Space padic_space(const PAdicModel& model, long max_points) {
  if (model.modulus() > max_points) {
    throw LimitError("carrier has " + model.modulus().get_str() + " residues, more than the " +
                     std::to_string(max_points) + "-point bound; use PAdicModel::dist directly");
  }
  const long n = mpz_get_si(model.modulus().get_mpz_t());
  std::vector<std::string> labels(n);
  std::vector<Rational> entries(n * n, Rational(0));
  for (long i = 0; i < n; ++i) labels[i] = std::to_string(i);
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) {
      const Rational dij = model.dist(mpz_class(i), mpz_class(j));
      entries[i * n + j] = dij;
      entries[j * n + i] = dij;
    }
  }
  return validate_or_die(DistanceMatrix::create(std::move(labels), std::move(entries)), "padic_space");
}

}  // namespace ultra
