// Geometric-arithmetic progressions: triples (p1, r, d), term generation,
// admissibility and order bounds, and verification of prime runs.

#pragma once

#include "gapk/primality.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace gapk {

// Parameters of the sequence p1 * r^j + j * d. Carries no admissibility
// guarantee by itself. d may be negative in verification mode only; search
// paths require d >= 0.
struct GapTriple {
  Natural p1;
  Natural r;
  Integer d;
};

enum class Violation { DOdd, P1NotOddPrime, RNotOdd, P1NotCoprimeD, RNotCoprimeD };
enum class SpecialCase { Generic, RIsOne, P1IsOne, BothOne };

inline constexpr std::uint64_t kOrderSaturated = std::numeric_limits<std::uint64_t>::max();

// Order bound and necessary conditions for k >= 3 windows starting at j = 0.
// max_order is min(p1, smallest prime factor of r) in the generic case, p1
// when r = 1, spf(r) - 1 when p1 = 1, and exactly 3 when both are 1.
// Saturates at kOrderSaturated when the bound exceeds 64 bits (r = 1 with a
// huge prime start); an Unbounded value never occurs.
struct AdmissibilityReport {
  bool admissible = false;
  std::vector<Violation> violations;
  std::uint64_t max_order = 0;
  SpecialCase special_case = SpecialCase::Generic;

  bool has(Violation v) const;
};

// A verified run of k (probable) primes at consecutive indices.
struct GapInstance {
  GapTriple triple;
  unsigned start_j = 0;
  unsigned k = 0;
  std::vector<Natural> terms;
  std::vector<PrimalityVerdict> verdicts;

  bool any_probable() const;
  std::size_t digits_first() const;
  std::size_t digits_last() const;
};

enum class FailureKind { NonPositive, LeadingOne, CompositeTerm };

struct VerifyFailure {
  unsigned failing_j = 0;
  FailureKind kind = FailureKind::CompositeTerm;
  std::optional<PrimalityVerdict> verdict;
};

struct VerifyOutcome {
  std::optional<GapInstance> instance;
  std::optional<VerifyFailure> failure;
  // k was larger than the admissibility order bound; verification proceeded and
  // failed (or would fail) naturally.
  bool exceeds_order_bound = false;

  bool ok() const { return instance.has_value(); }
};

// Exact value p1 * r^j + j * d. May be <= 0 for negative d; callers check.
Integer term(const GapTriple& t, unsigned j);

AdmissibilityReport admissible(const GapTriple& t);

// The k = 2 rule: a pair only needs p1 * r coprime to d.
bool pair_admissible(const GapTriple& t);

// Checks the k terms from index start_j. Fails with the first offending
// index; the k = 2 relaxed rules and out-of-bound k are handled by flags,
// never by rejecting the call. k is capped at 10^4.
VerifyOutcome verify_gap(const GapTriple& t, unsigned k, unsigned start_j = 0,
                         int rounds = kDefaultRounds);

// Longest run of primes starting exactly at start_j, scanning indices up to
// j_limit inclusive. 0 when the first term is composite.
unsigned gap_run_length(const GapTriple& t, unsigned start_j, unsigned j_limit,
                        int rounds = kDefaultRounds);

}  // namespace gapk
