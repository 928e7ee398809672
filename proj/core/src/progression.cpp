#include "gapk/progression.hpp"

#include <algorithm>
#include <stdexcept>

namespace gapk {

namespace {

inline constexpr unsigned kOrderCap = 10000;  // sanity bound on k

bool coprime(const Integer& a, const Integer& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g == 1;
}

std::uint64_t saturate(const Natural& n) {
  return fits_u64(n) ? to_u64(n) : kOrderSaturated;
}

bool is_odd_prime(const Natural& n, int rounds) {
  return is_odd(n) && n > 1 && passes_primality(n, rounds);
}

}  // namespace

bool AdmissibilityReport::has(Violation v) const {
  return std::find(violations.begin(), violations.end(), v) != violations.end();
}

bool GapInstance::any_probable() const {
  for (const auto& v : verdicts)
    if (v.verdict == Verdict::ProbablePrime) return true;
  return false;
}

std::size_t GapInstance::digits_first() const {
  return terms.empty() ? 0 : digits10(terms.front());
}

std::size_t GapInstance::digits_last() const {
  return terms.empty() ? 0 : digits10(terms.back());
}

Integer term(const GapTriple& t, unsigned j) {
  Integer out = t.p1 * pow_natural(t.r, j);
  out += Integer(static_cast<unsigned long>(j)) * t.d;
  return out;
}

AdmissibilityReport admissible(const GapTriple& t) {
  if (t.p1 < 1 || t.r < 1) throw std::invalid_argument("admissible: p1 and r must be >= 1");
  AdmissibilityReport rep;
  const bool p1_one = t.p1 == 1;
  const bool r_one = t.r == 1;

  if (p1_one && r_one) {
    // 1 + j*d: the single window 3, 5, 7 at d = 2.
    rep.special_case = SpecialCase::BothOne;
    if (is_odd(t.d)) rep.violations.push_back(Violation::DOdd);
    rep.max_order = 3;
  } else if (p1_one) {
    rep.special_case = SpecialCase::P1IsOne;
    if (is_odd(t.d)) rep.violations.push_back(Violation::DOdd);
    if (is_even(t.r)) rep.violations.push_back(Violation::RNotOdd);
    if (!coprime(t.r, t.d)) rep.violations.push_back(Violation::RNotCoprimeD);
    Natural spf = smallest_prime_factor(t.r);
    rep.max_order = saturate(spf - 1);
  } else if (r_one) {
    rep.special_case = SpecialCase::RIsOne;
    if (is_odd(t.d)) rep.violations.push_back(Violation::DOdd);
    if (!is_odd_prime(t.p1, kDefaultRounds)) rep.violations.push_back(Violation::P1NotOddPrime);
    if (!coprime(t.p1, t.d)) rep.violations.push_back(Violation::P1NotCoprimeD);
    rep.max_order = saturate(t.p1);
  } else {
    rep.special_case = SpecialCase::Generic;
    if (is_odd(t.d)) rep.violations.push_back(Violation::DOdd);
    if (!is_odd_prime(t.p1, kDefaultRounds)) rep.violations.push_back(Violation::P1NotOddPrime);
    if (is_even(t.r)) rep.violations.push_back(Violation::RNotOdd);
    if (!coprime(t.p1, t.d)) rep.violations.push_back(Violation::P1NotCoprimeD);
    if (!coprime(t.r, t.d)) rep.violations.push_back(Violation::RNotCoprimeD);
    Natural spf = smallest_prime_factor(t.r);
    rep.max_order = saturate(t.p1 < spf ? t.p1 : spf);
  }
  rep.admissible = rep.violations.empty();
  return rep;
}

bool pair_admissible(const GapTriple& t) {
  return coprime(t.p1 * t.r, t.d);
}

VerifyOutcome verify_gap(const GapTriple& t, unsigned k, unsigned start_j, int rounds) {
  if (k < 2) throw std::invalid_argument("verify_gap: k must be >= 2");
  if (k > kOrderCap) throw std::invalid_argument("verify_gap: k exceeds sanity cap");
  if (t.p1 < 1 || t.r < 1) throw std::invalid_argument("verify_gap: p1 and r must be >= 1");

  VerifyOutcome out;
  if (k > 2) {
    out.exceeds_order_bound = admissible(t).max_order < k;
  }

  GapInstance inst;
  inst.triple = t;
  inst.start_j = start_j;
  inst.k = k;
  inst.terms.reserve(k);
  inst.verdicts.reserve(k);

  Natural pw = t.p1 * pow_natural(t.r, start_j);
  for (unsigned i = 0; i < k; ++i) {
    const unsigned j = start_j + i;
    Integer val = pw + Integer(static_cast<unsigned long>(j)) * t.d;
    if (val <= 0) {
      out.failure = VerifyFailure{j, FailureKind::NonPositive, std::nullopt};
      return out;
    }
    if (val == 1) {
      // p1 = 1 at j = 0: the leading 1 is excluded; start at j = 1 instead.
      out.failure = VerifyFailure{j, FailureKind::LeadingOne, std::nullopt};
      return out;
    }
    PrimalityVerdict v = is_prime(val, rounds);
    if (!v.passed()) {
      out.failure = VerifyFailure{j, FailureKind::CompositeTerm, std::move(v)};
      return out;
    }
    inst.terms.push_back(Natural(val));
    inst.verdicts.push_back(std::move(v));
    pw *= t.r;
  }
  out.instance = std::move(inst);
  return out;
}

unsigned gap_run_length(const GapTriple& t, unsigned start_j, unsigned j_limit, int rounds) {
  if (j_limit < start_j) throw std::invalid_argument("gap_run_length: j_limit < start_j");
  Natural pw = t.p1 * pow_natural(t.r, start_j);
  unsigned len = 0;
  for (unsigned j = start_j; j <= j_limit; ++j) {
    Integer val = pw + Integer(static_cast<unsigned long>(j)) * t.d;
    if (val < 2 || !passes_primality(val, rounds)) break;
    ++len;
    pw *= t.r;
  }
  return len;
}

}  // namespace gapk
