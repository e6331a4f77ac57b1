#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ultra/rational.hpp"
#include "ultra/space.hpp"

namespace ultra {

/// Ring of integers modulo p^precision with the p-adic distance
/// d(a, b) = p^-v, where v counts factors of p in (a - b), capped at the
/// precision.  Residues are canonical representatives in [0, p^precision).
class PAdicModel {
 public:
  static PAdicModel create(long p, int precision);

  long p() const { return p_; }
  int precision() const { return precision_; }
  const mpz_class& modulus() const { return modulus_; }

  bool in_carrier(const mpz_class& a) const { return a >= 0 && a < modulus_; }
  mpz_class reduce(const mpz_class& a) const;

  /// min(v_p(a - b), precision); precision exactly when a = b here.
  int valuation(const mpz_class& a, const mpz_class& b) const;
  Rational dist(const mpz_class& a, const mpz_class& b) const;

 private:
  PAdicModel(long p, int precision, mpz_class modulus)
      : p_(p), precision_(precision), modulus_(std::move(modulus)) {}

  long p_;
  int precision_;
  mpz_class modulus_;
};

/// Finite word over nonnegative integer symbols.  Distance between two
/// words is 2^-k with k the first position where they disagree, reading a
/// missing position (when one word is a prefix of the other) as a
/// disagreement.  Zero exactly for identical words.
struct BaireSeq {
  std::vector<unsigned long> symbols;
};

Rational baire_dist(const BaireSeq& s, const BaireSeq& t);

/// Binary merge tree over leaves 0..L-1; merge k creates node L+k.  A
/// valid tree uses every node except the root as a child exactly once,
/// with positive heights that never decrease from child merge to parent.
struct Dendrogram {
  struct Merge {
    long left;
    long right;
    Rational height;
  };
  std::vector<std::string> leaves;
  std::vector<Merge> merges;
};

/// Cophenetic space of the tree: d(a, b) is the height of the lowest
/// merge joining leaves a and b.  Always validates as ultrametric.
Space dendrogram_to_space(const Dendrogram& d);

/// n points, all pairwise distances 1, labels "1".."n".
Space discrete_space(long n);

/// Deterministic seeded ultrametric space on n points: a uniformly shaped
/// random merge tree with heights drawn from {1/k : 1 <= k <= n}.  Same
/// (n, seed) gives byte-identical output on every platform.
Space random_space(long n, std::uint64_t seed);

/// Materializes the full carrier of a p-adic model as a Space with labels
/// "0".."p^precision - 1".  Refuses carriers larger than max_points with
/// a LimitError suggesting PAdicModel::dist for pointwise work.
Space padic_space(const PAdicModel& model, long max_points = 2048);

}  // namespace ultra
