#include "gapk/filter.hpp"

#include "gapk/primality.hpp"

#include <sstream>
#include <stdexcept>

namespace gapk {

namespace {

std::uint32_t powmod_u32(std::uint32_t a, std::uint32_t e, std::uint32_t m) {
  std::uint64_t r = 1, b = a % m;
  while (e != 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t invmod_u32(std::uint32_t a, std::uint32_t q) {
  return powmod_u32(a, q - 2, q);  // q prime
}

void check_modulus(std::uint32_t q) {
  if (q < 3 || !is_prime_u64(q)) throw std::invalid_argument("modulus must be an odd prime");
}

}  // namespace

std::string ResidueForm::display() const {
  std::ostringstream os;
  if (b == 0) {
    os << c;
    if (kind == FormKind::ZeroConstant && exempt) os << " (term is q)";
    return os.str();
  }
  if (c != 0) os << c << "+";
  if (b != 1) os << b;
  os << "d";
  return os.str();
}

std::vector<ResidueForm> residue_forms(const Natural& p1, const Natural& r, unsigned k,
                                       std::uint32_t q, unsigned start_j) {
  check_modulus(q);
  if (k < 2) throw std::invalid_argument("residue_forms: k must be >= 2");
  if (p1 < 1 || r < 1) throw std::invalid_argument("residue_forms: p1 and r must be >= 1");

  const std::uint32_t rq = mod_u32(r, q);
  std::uint32_t c = static_cast<std::uint32_t>(
      static_cast<std::uint64_t>(mod_u32(p1, q)) * powmod_u32(rq, start_j % (q - 1), q) % q);
  // rq == 0 makes the Fermat reduction of the exponent invalid; recompute.
  if (rq == 0 && start_j > 0) c = 0;

  std::vector<ResidueForm> forms;
  forms.reserve(k);
  for (unsigned i = 0; i < k; ++i) {
    const unsigned j = start_j + i;
    ResidueForm f;
    f.j = j;
    f.c = c;
    f.b = static_cast<std::uint32_t>(j % q);
    if (f.b == 0 && f.c == 0) {
      f.kind = FormKind::ZeroConstant;
      // A zero form means q divides the term whatever d is. The term can
      // still be the prime q itself, but only at j = 0 where it is the
      // d-free value p1; every later zero form sits at j >= q, so the term
      // is at least 1 + q*d > q for positive d.
      f.exempt = (j == 0 && p1 == q);
    } else if (f.b == 0) {
      f.kind = FormKind::Numeric;
    } else {
      f.kind = FormKind::Active;
      f.forbids = static_cast<std::uint32_t>(
          static_cast<std::uint64_t>((q - f.c) % q) * invmod_u32(f.b, q) % q);
    }
    forms.push_back(f);
    c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * rq % q);
  }
  return forms;
}

std::set<std::uint32_t> forbidden_residues(const Natural& p1, const Natural& r, unsigned k,
                                           std::uint32_t q, unsigned start_j) {
  std::set<std::uint32_t> out;
  for (const auto& f : residue_forms(p1, r, k, q, start_j))
    if (f.forbids) out.insert(*f.forbids);
  return out;
}

ModulusAnalysis analyze_modulus(const Natural& p1, const Natural& r, unsigned k, std::uint32_t q,
                                unsigned start_j) {
  ModulusAnalysis a;
  a.q = q;
  a.forms = residue_forms(p1, r, k, q, start_j);
  bool bad_zero = false;
  bool exempted = false;
  for (const auto& f : a.forms) {
    if (f.kind == FormKind::ZeroConstant) {
      if (f.exempt)
        exempted = true;
      else
        bad_zero = true;
    }
    if (f.forbids) a.forbidden.insert(*f.forbids);
  }
  if (bad_zero || a.forbidden.size() == q) {
    a.outcome = ModulusOutcome::Impossible;
  } else if (a.forbidden.size() == q - 1 && a.forbidden.count(0) == 0) {
    a.outcome = ModulusOutcome::Forced;
  } else if (exempted) {
    a.outcome = ModulusOutcome::Exempt;
  } else {
    a.outcome = ModulusOutcome::Unforced;
  }
  return a;
}

FactorCertificate common_factor(const Natural& p1, const Natural& r, unsigned k,
                                std::uint32_t q_max, unsigned start_j) {
  if (k < 2) throw std::invalid_argument("common_factor: k must be >= 2");
  if (q_max < 2) throw std::invalid_argument("common_factor: q_max must be >= 2");
  FactorCertificate cert;
  cert.k = k;
  cert.p1 = p1;
  cert.r = r;
  cert.start_j = start_j;
  cert.q_max = q_max;
  if (k >= 3) cert.forced_primes.push_back(2);
  for (std::uint32_t q : primes_below(q_max + 1)) {
    if (q == 2) continue;
    ModulusAnalysis a = analyze_modulus(p1, r, k, q, start_j);
    if (a.outcome == ModulusOutcome::Forced) cert.forced_primes.push_back(q);
    if (a.outcome == ModulusOutcome::Impossible && !cert.impossible) {
      cert.impossible = true;
      cert.impossible_q = q;
    }
    cert.analyses.push_back(std::move(a));
  }
  cert.common_factor = 1;
  for (std::uint32_t p : cert.forced_primes) cert.common_factor *= p;
  return cert;
}

std::string factor_label(const std::vector<std::uint32_t>& forced_primes) {
  if (forced_primes.empty()) return "1";
  if (forced_primes.size() == 1 && forced_primes[0] == 2) return "2";
  const auto& primes = small_primes();
  std::size_t m = 0;
  while (m < forced_primes.size() && m < primes.size() && forced_primes[m] == primes[m]) ++m;
  std::ostringstream os;
  for (std::size_t i = forced_primes.size(); i > m; --i) {
    os << forced_primes[i - 1];
    if (i - 1 > m || m > 0) os << '*';
  }
  if (m > 0) os << primes[m - 1] << '#';
  std::string s = os.str();
  if (!s.empty() && s.back() == '*') s.pop_back();
  return s;
}

std::string factor_label(const FactorCertificate& cert) {
  return factor_label(cert.forced_primes);
}

std::string FactorCertificate::label() const {
  return factor_label(forced_primes);
}

const char* to_string(ModulusOutcome o) {
  switch (o) {
    case ModulusOutcome::Forced: return "forced";
    case ModulusOutcome::Unforced: return "unforced";
    case ModulusOutcome::Impossible: return "impossible";
    case ModulusOutcome::Exempt: return "exempt";
  }
  return "?";
}

std::string certificate_report(const FactorCertificate& cert) {
  std::ostringstream os;
  os << "common-factor certificate\n";
  os << "  k        = " << cert.k << "\n";
  os << "  p1       = " << cert.p1.get_str() << "\n";
  os << "  r        = " << cert.r.get_str() << "\n";
  if (cert.start_j != 0) os << "  start_j  = " << cert.start_j << "\n";
  os << "  q_max    = " << cert.q_max << "\n";
  os << "  factor   = " << cert.common_factor.get_str() << " = " << cert.label() << "\n";
  if (cert.impossible) {
    os << "  IMPOSSIBLE: a term is divisible by " << *cert.impossible_q
       << " for every d; no GAP-" << cert.k << " exists for this start and ratio\n";
  }
  for (const auto& a : cert.analyses) {
    os << "  q=" << a.q << "  residues {";
    for (std::size_t i = 0; i < a.forms.size(); ++i) {
      if (i) os << ", ";
      os << a.forms[i].display();
    }
    os << "}  forbidden d (mod " << a.q << "): {";
    bool first = true;
    for (auto v : a.forbidden) {
      if (!first) os << ", ";
      os << v;
      first = false;
    }
    os << "}  -> " << to_string(a.outcome) << "\n";
  }
  return os.str();
}

}  // namespace gapk
