#include "gapk/primality.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>

namespace gapk {

// ---------------------------------------------------------------------------
// natural.hpp helpers

std::size_t digits10(const Integer& n) {
  if (mpz_sgn(n.get_mpz_t()) == 0) return 1;
  mpz_class a;
  mpz_abs(a.get_mpz_t(), n.get_mpz_t());
  // sizeinbase is exact or one too large; settle with a power comparison.
  std::size_t est = mpz_sizeinbase(a.get_mpz_t(), 10);
  if (est <= 1) return 1;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(est - 1));
  return a < p10 ? est - 1 : est;
}

Natural pow_natural(const Natural& base, unsigned long exp) {
  Natural out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

bool fits_u64(const Integer& n) {
  return mpz_sgn(n.get_mpz_t()) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Integer& n) {
  if (!fits_u64(n)) throw std::overflow_error("value does not fit in 64 bits");
  return static_cast<std::uint64_t>(mpz_get_ui(n.get_mpz_t()));
}

std::uint32_t mod_u32(const Natural& n, std::uint32_t m) {
  if (m == 0) throw std::invalid_argument("mod_u32: zero modulus");
  return static_cast<std::uint32_t>(mpz_fdiv_ui(n.get_mpz_t(), m));
}

// ---------------------------------------------------------------------------
// sieves

std::vector<std::uint32_t> primes_below(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit <= 2) return out;
  std::vector<bool> comp(limit, false);
  for (std::uint32_t i = 2; i < limit; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit; j += i) comp[j] = true;
  }
  return out;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = primes_below(10000);
  return table;
}

namespace {

const std::vector<std::uint32_t>& trial_primes_10e7() {
  static const std::vector<std::uint32_t> table = primes_below(10000000);
  return table;
}

// ---------------------------------------------------------------------------
// 64-bit deterministic Miller-Rabin

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

// True when base a proves n composite.
bool mr_witness64(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  std::uint64_t x = powmod64(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod64(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Proven sufficient for every n < 2^64.
constexpr std::array<std::uint64_t, 12> kBases64 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// 0: composite (witness filled), 1: prime.
int is_prime_u64_w(std::uint64_t n, std::uint64_t* witness) {
  if (n < 2) return 0;
  for (std::uint32_t p : small_primes()) {
    if (p > 1000) break;
    if (n % p == 0) {
      if (n == p) return 1;
      if (witness) *witness = p;
      return 0;
    }
  }
  if (n < 1009ul * 1009ul) return 1;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases64) {
    if (mr_witness64(n, a, d, s)) {
      if (witness) *witness = a;
      return 0;
    }
  }
  return 1;
}

// ---------------------------------------------------------------------------
// arbitrary-precision strong tests

// Strong Fermat test to base a. n odd, n - 1 = d * 2^s. True when a
// witnesses compositeness.
bool mr_witness_mpz(const mpz_class& n, unsigned long a, const mpz_class& d, unsigned long s) {
  mpz_class x, base(static_cast<unsigned long>(a));
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  mpz_class nm1 = n - 1;
  if (x == 1 || x == nm1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == nm1) return false;
  }
  return true;
}

// Strong Lucas probable-prime test with Selfridge parameters: first
// D in 5, -7, 9, -11, ... with (D|n) = -1, P = 1, Q = (1 - D) / 4.
// Callers guarantee n odd, n > 3, no factor below 1000, not a perfect square.
bool strong_lucas_prp(const mpz_class& n) {
  long dmag = 5;
  int sign = 1;
  mpz_class D;
  for (;;) {
    D = dmag * sign;
    int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && mpz_cmpabs(D.get_mpz_t(), n.get_mpz_t()) < 0) return false;  // shares a factor
    sign = -sign;
    dmag += 2;
    if (dmag > 1000000) throw std::logic_error("Lucas parameter search did not terminate");
  }
  // P = 1, Q = (1 - D) / 4
  mpz_class Q = (1 - D) / 4;
  Q %= n;
  if (Q < 0) Q += n;

  mpz_class dpart = n + 1;
  unsigned long s = mpz_scan1(dpart.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(dpart.get_mpz_t(), dpart.get_mpz_t(), s);

  // Binary ladder for U_d, V_d (mod n), tracking Q^t.
  mpz_class U(1), V(1), qk = Q;  // index t = 1
  mpz_class Dmod = D % n;
  if (Dmod < 0) Dmod += n;
  auto halve = [&n](mpz_class& x) {
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
  };
  long bits = static_cast<long>(mpz_sizeinbase(dpart.get_mpz_t(), 2));
  mpz_class t1, t2;
  for (long i = bits - 2; i >= 0; --i) {
    // t -> 2t
    U = (U * V) % n;
    V = (V * V - 2 * qk) % n;
    if (V < 0) V += n;
    qk = (qk * qk) % n;
    if (mpz_tstbit(dpart.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      // 2t -> 2t + 1 (P = 1)
      t1 = U + V;
      t2 = Dmod * U + V;
      halve(t1);
      halve(t2);
      U = t1 % n;
      V = t2 % n;
      qk = (qk * Q) % n;
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    V = (V * V - 2 * qk) % n;
    if (V < 0) V += n;
    if (V == 0) return true;
    qk = (qk * qk) % n;
  }
  return false;
}

enum class Raw { Composite, Prime, Probable };

struct RawResult {
  Raw raw = Raw::Composite;
  std::optional<Natural> witness;
};

RawResult classify(const Natural& n, int rounds) {
  RawResult res;
  if (n < 2) return res;
  for (std::uint32_t p : small_primes()) {
    if (p > 1000) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      if (n == p) {
        res.raw = Raw::Prime;
        return res;
      }
      res.witness = Natural(static_cast<unsigned long>(p));
      return res;
    }
  }
  if (n < 1009ul * 1009ul) {
    res.raw = Raw::Prime;
    return res;
  }
  if (fits_u64(n)) {
    std::uint64_t w = 0;
    if (is_prime_u64_w(to_u64(n), &w) == 1) {
      res.raw = Raw::Prime;
    } else if (w != 0) {
      res.witness = Natural(static_cast<unsigned long>(w));
    }
    return res;
  }
  // Above the deterministic threshold: strong base-2 Fermat + strong Lucas,
  // then extra strong Fermat rounds with fixed odd prime bases.
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  if (mr_witness_mpz(n, 2, d, s)) {
    res.witness = Natural(2);
    return res;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) return res;  // square, and 2-strong-prp: composite
  if (!strong_lucas_prp(n)) return res;
  if (rounds > 1000) rounds = 1000;
  const auto& primes = small_primes();
  for (int i = 0; i < rounds; ++i) {
    unsigned long base = primes[static_cast<std::size_t>(i) + 1];  // 3, 5, 7, ...
    if (mr_witness_mpz(n, base, d, s)) {
      res.witness = Natural(base);
      return res;
    }
  }
  res.raw = Raw::Probable;
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------
// public surface

bool is_prime_u64(std::uint64_t n) { return is_prime_u64_w(n, nullptr) == 1; }

PrimalityVerdict is_prime(const Natural& n, int rounds) {
  PrimalityVerdict v;
  v.value = n;
  RawResult raw = classify(n, rounds);
  switch (raw.raw) {
    case Raw::Prime:
      v.verdict = Verdict::Prime;
      v.method = Method::Deterministic;
      break;
    case Raw::Probable:
      v.verdict = Verdict::ProbablePrime;
      v.method = Method::Probabilistic;
      break;
    case Raw::Composite:
      v.verdict = Verdict::Composite;
      v.method = Method::Deterministic;
      break;
  }
  v.witness = std::move(raw.witness);
  return v;
}

bool passes_primality(const Natural& n, int rounds) {
  return classify(n, rounds).raw != Raw::Composite;
}

Natural primorial(unsigned long n) {
  Natural out;
  mpz_primorial_ui(out.get_mpz_t(), n);
  return out;
}

namespace {

// Pollard-Brent rho. Returns a nontrivial factor; decrements budget.
mpz_class pollard_brent(const mpz_class& n, std::uint64_t& budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0xc0ffee37UL);
  for (unsigned long attempt = 1; attempt <= 64; ++attempt) {
    mpz_class y = rng.get_z_range(n - 3) + 2;
    mpz_class c = rng.get_z_range(n - 2) + 1;
    mpz_class x, ys, q(1), g(1);
    unsigned long r = 1;
    const unsigned long batch = 128;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = std::min(batch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          if (budget == 0) throw std::runtime_error("factorization budget exhausted");
          --budget;
          y = (y * y + c) % n;
          mpz_class diff = x - y;
          mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
      }
      r *= 2;
    }
    if (g == n) {
      // backtrack
      g = 1;
      while (g == 1) {
        if (budget == 0) throw std::runtime_error("factorization budget exhausted");
        --budget;
        ys = (ys * ys + c) % n;
        mpz_class diff = x - ys;
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g != n && g != 1) return g;
  }
  throw std::runtime_error("factorization failed");
}

void collect_prime_factors(const mpz_class& n, std::vector<mpz_class>& out, std::uint64_t& budget) {
  if (passes_primality(n, kDefaultRounds)) {
    out.push_back(n);
    return;
  }
  mpz_class f = pollard_brent(n, budget);
  collect_prime_factors(f, out, budget);
  collect_prime_factors(n / f, out, budget);
}

}  // namespace

Natural smallest_prime_factor(const Natural& n) {
  if (n < 2) throw std::invalid_argument("smallest_prime_factor: n must be >= 2");
  // Big inputs are usually user-supplied primes (Mersenne ratios); settle
  // those before paying for the 10^7 trial table.
  if (!fits_u64(n) && passes_primality(n, kDefaultRounds)) return n;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  const auto& table = root < 10000 ? small_primes() : trial_primes_10e7();
  for (std::uint32_t p : table) {
    if (root < p) return n;  // no factor up to sqrt(n): prime
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Natural(static_cast<unsigned long>(p));
  }
  if (passes_primality(n, kDefaultRounds)) return n;
  std::uint64_t budget = std::uint64_t(1) << 22;
  std::vector<mpz_class> primes;
  collect_prime_factors(n, primes, budget);
  mpz_class best = primes.front();
  for (const auto& p : primes)
    if (p < best) best = p;
  return best;
}

Natural smallest_prime_geq(unsigned long k) {
  if (k <= 2) return Natural(2);
  std::uint64_t c = k;
  if (c % 2 == 0) ++c;
  while (!is_prime_u64(c)) c += 2;
  return Natural(static_cast<unsigned long>(c));
}

}  // namespace gapk
