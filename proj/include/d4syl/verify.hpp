#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d4syl/characters.hpp"

namespace d4syl {

struct VerificationReport {
  std::string name;
  bool passed = true;
  /// First failure, with enough labels to reproduce it. Empty on success.
  std::string counterexample;
  /// What was checked ("185745 pairs", ...).
  std::string detail;
  double seconds = 0;
};

struct OrthogonalityOptions {
  /// Check every pair instead of a seeded sample.
  bool full = true;
  /// Sampled mode: at least this many unordered pairs (diagonal included),
  /// taken as all pairs among a random subset of rows or columns.
  std::uint64_t sample_pairs = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
};

/// sum_C |C| chi(C) conj(psi(C)) = delta * q^12, exactly.
VerificationReport verify_row_orthogonality(const CharacterTable& table, const OrthogonalityOptions& opt = {});
/// sum_chi chi(C) conj(chi(D)) = delta * q^12 / |C|, exactly.
VerificationReport verify_column_orthogonality(const CharacterTable& table, const OrthogonalityOptions& opt = {});

/// Counts of enumerated classes and characters (by family and by degree)
/// against the closed polynomials and their (q-1)-expansions.
VerificationReport verify_counts(const FieldTower& ctx);
/// sum_chi deg(chi)^2 = q^12.
VerificationReport verify_degrees(const FieldTower& ctx);

/// Brute-force orbits against list_classes and class_of on every element.
VerificationReport verify_class_census(const FieldTower& ctx, std::uint64_t cap = kDefaultEnumerationCap);
/// Induction oracle against every table cell.
VerificationReport verify_oracle_values(const CharacterTable& table, std::uint64_t cap = kDefaultEnumerationCap);
/// Closed conjugation against multiplication on `random_pairs` seeded pairs,
/// and, when `all_reps` is set, on every (u, class representative) pair.
VerificationReport verify_conjugation(const FieldTower& ctx, std::uint64_t random_pairs, bool all_reps,
                                      std::uint64_t seed = 1, unsigned workers = 0);

/// Census, oracle values and conjugation (random pairs plus class
/// representatives against random u). Throws TooLarge above the cap.
std::vector<VerificationReport> verify_against_oracles(const CharacterTable& table,
                                                       std::uint64_t cap = kDefaultEnumerationCap);

/// Uniformly random element of U drawn from `rng`.
template <class Engine>
GroupElement random_element(const FieldTower& ctx, Engine& rng) {
  const std::uint32_t q = ctx.q(), Q = ctx.order3();
  auto pick = [&](std::uint32_t n) { return static_cast<std::uint32_t>(rng() % n); };
  GroupElement x;
  x.t1 = Fq3{pick(Q)};
  x.t2 = Fq{pick(q)};
  x.t3 = Fq3{pick(Q)};
  x.t4 = Fq3{pick(Q)};
  x.t5 = Fq{pick(q)};
  x.t6 = Fq{pick(q)};
  return x;
}

}  // namespace d4syl
