// Primality testing and small number-theory utilities.
//
// Verdicts below 2^64 are deterministic: trial division plus a Miller-Rabin
// run over a base set proven sufficient for the full 64-bit range. Above
// 2^64 the test is a strong base-2 Fermat test combined with a strong Lucas
// test (Selfridge parameters), followed by a configurable number of extra
// Miller-Rabin rounds with fixed prime bases, so results are reproducible
// across runs and worker counts.

#pragma once

#include "gapk/natural.hpp"

#include <optional>
#include <vector>

namespace gapk {

enum class Verdict { Prime, Composite, ProbablePrime };
enum class Method { Deterministic, Probabilistic };

struct PrimalityVerdict {
  Natural value;
  Verdict verdict = Verdict::Composite;
  Method method = Method::Deterministic;
  // A factor or a Miller-Rabin base that witnessed compositeness, when known.
  std::optional<Natural> witness;

  bool passed() const { return verdict != Verdict::Composite; }
};

inline constexpr int kDefaultRounds = 40;

// Full verdict for n. 0, 1 and negative inputs are Composite-class.
PrimalityVerdict is_prime(const Natural& n, int rounds = kDefaultRounds);

// Allocation-free fast paths used by the search loops.
bool is_prime_u64(std::uint64_t n);
bool passes_primality(const Natural& n, int rounds = kDefaultRounds);

// Product of all primes <= n; primorial(0) = primorial(1) = 1.
Natural primorial(unsigned long n);

// Least prime dividing n, n >= 2. Trial division up to 10^7, then Pollard
// rho within an iteration budget; throws std::runtime_error if the budget is
// exhausted without a factor or a (probable-)primality proof.
Natural smallest_prime_factor(const Natural& n);

// Least prime p with p >= k.
Natural smallest_prime_geq(unsigned long k);

// Ascending primes below limit (simple sieve).
std::vector<std::uint32_t> primes_below(std::uint32_t limit);

// Shared table of the primes below 10^4.
const std::vector<std::uint32_t>& small_primes();

}  // namespace gapk
