// Residue-class analysis of the defining sequence modulo small primes q.
//
// Each term p1 * r^j + j * d reduces to a linear form c + b*d (mod q) with
// c = p1 * r^j mod q and b = j mod q. An active form (b != 0) forbids exactly
// one residue class of d; when every nonzero residue mod q is forbidden, q
// must divide d. The product of such forced primes (with 2 for k >= 3) is a
// guaranteed divisor of the difference of every GAP-k for the given start
// and ratio, which is what makes the search accelerator sound.

#pragma once

#include "gapk/natural.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gapk {

enum class FormKind {
  Numeric,       // b = 0, c != 0: constant residue, no constraint on d
  Active,        // b != 0: forbids d == -c * b^-1 (mod q)
  ZeroConstant,  // b = 0 and c = 0: term divisible by q regardless of d
};

struct ResidueForm {
  unsigned j = 0;        // term index
  std::uint32_t c = 0;   // p1 * r^j mod q
  std::uint32_t b = 0;   // j mod q
  FormKind kind = FormKind::Numeric;
  // ZeroConstant at j = 0 whose term value is the prime q itself (p1 == q).
  // Any later ZeroConstant term exceeds q for every positive d and is
  // disqualifying.
  bool exempt = false;
  std::optional<std::uint32_t> forbids;  // engaged for Active forms

  std::string display() const;  // "2", "4+d", "3+2d", "0"
};

enum class ModulusOutcome {
  Forced,      // d == 0 (mod q) is necessary
  Unforced,    // some nonzero residue of d remains open
  Impossible,  // no GAP-k exists for this (p1, r, k, start_j) at all
  Exempt,      // q is itself a term value (q == p1 at j = 0); never forced
};

struct ModulusAnalysis {
  std::uint32_t q = 0;
  std::vector<ResidueForm> forms;         // length k
  std::set<std::uint32_t> forbidden;      // forbidden residues of d mod q
  ModulusOutcome outcome = ModulusOutcome::Unforced;
};

struct FactorCertificate {
  unsigned k = 0;
  Natural p1;
  Natural r;
  unsigned start_j = 0;
  std::uint32_t q_max = 0;
  std::vector<std::uint32_t> forced_primes;  // ascending; contains 2 for k >= 3
  Natural common_factor;                     // product of forced_primes
  std::vector<ModulusAnalysis> analyses;     // ascending q
  bool impossible = false;
  std::optional<std::uint32_t> impossible_q;

  std::string label() const;
};

inline constexpr std::uint32_t kDefaultQMax = 200;

// The k linear forms of the window starting at start_j, classified.
// q must be an odd prime; k >= 2.
std::vector<ResidueForm> residue_forms(const Natural& p1, const Natural& r, unsigned k,
                                       std::uint32_t q, unsigned start_j = 0);

// Union of the residues of d forbidden by the active forms.
std::set<std::uint32_t> forbidden_residues(const Natural& p1, const Natural& r, unsigned k,
                                           std::uint32_t q, unsigned start_j = 0);

ModulusAnalysis analyze_modulus(const Natural& p1, const Natural& r, unsigned k,
                                std::uint32_t q, unsigned start_j = 0);

// Merges the per-modulus verdicts for all odd primes q <= q_max into the
// forced-divisor certificate. Forced primes are independent (CRT) and enter
// to the first power only.
FactorCertificate common_factor(const Natural& p1, const Natural& r, unsigned k,
                                std::uint32_t q_max = kDefaultQMax, unsigned start_j = 0);

// Primorial-style rendering: largest n# whose primes are all forced, times
// the remaining forced primes in descending order ("19*11#"). Factor values
// 1 and 2 render as "1" and "2".
std::string factor_label(const std::vector<std::uint32_t>& forced_primes);
std::string factor_label(const FactorCertificate& cert);

// Human-readable per-q residue table with forbidden sets and verdicts.
std::string certificate_report(const FactorCertificate& cert);

const char* to_string(ModulusOutcome o);

}  // namespace gapk
