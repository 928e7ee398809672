// Acceptance suite: one criterion per numbered case, one PASS/FAIL line each.
// Usage: acceptance [criterion ...]; no arguments runs all eleven.

#include "gapk/catalog.hpp"
#include "gapk/filter.hpp"
#include "gapk/numparse.hpp"
#include "gapk/progression.hpp"
#include "gapk/search.hpp"

#include <chrono>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace gapk;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int id;
  const char* title;
  bool (*fn)(std::ostream&);
};

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// --------------------------------------------------------------------------
// 1. minimal differences for k = 2..11

bool c1(std::ostream& log) {
  const std::pair<unsigned, Natural> expected[] = {
      {2, Natural(1)},      {3, Natural(2)},      {4, Natural(6)},
      {5, Natural(84)},     {6, Natural(144)},    {7, Natural(3324)},
      {8, Natural(62610)},  {9, Natural(903030)}, {10, Natural(903030)},
  };
  bool ok = true;
  for (const auto& [k, d] : expected) {
    auto t0 = Clock::now();
    auto res = minimal_gap(k, Natural(2000000));
    double el = secs_since(t0);
    bool good = res.found() && res.searched_below == d && el < 60.0;
    log << "  k=" << k << ": d=" << (res.found() ? res.searched_below.get_str() : "none")
        << " expected " << d.get_str() << " (" << el << "s)" << (good ? "" : "  <- FAIL") << "\n";
    ok = ok && good;
  }
  auto t0 = Clock::now();
  auto res11 = minimal_gap(11, Natural(500000000));
  double el = secs_since(t0);
  bool good11 = res11.found() && res11.searched_below == 443687580 && el < 1800.0;
  log << "  k=11: d=" << (res11.found() ? res11.searched_below.get_str() : "none")
      << " expected 443687580 (" << el << "s, stride " << res11.stride_used.get_str() << ")"
      << (good11 ? "" : "  <- FAIL") << "\n";
  return ok && good11;
}

// --------------------------------------------------------------------------
// 2. the published difference scan and window materialization

bool c2(std::ostream& log) {
  SearchSpec spec;
  spec.p1 = 5;
  spec.r = 5;
  spec.k = 5;
  spec.d_min = 0;
  spec.d_max = 1000;
  spec.stride = Natural(1);  // as published: every d in [0, 1000]
  auto plain = runner(spec);
  spec.stride.reset();  // and the accelerated route must agree
  auto accel = runner(spec);

  std::vector<Natural> expected;
  for (unsigned long v : {84ul, 114ul, 138ul, 168ul, 258ul, 324ul, 348ul, 462ul, 552ul, 588ul,
                          684ul, 714ul, 744ul, 798ul, 882ul, 894ul, 972ul})
    expected.emplace_back(v);

  bool ok = plain.differences == expected && accel.differences == expected;
  log << "  runner found " << plain.differences.size() << " differences (expected 17)\n";

  auto w = walker(GapTriple{5, 5, 114}, 5, 0, 5);
  bool wok = w.size() == 1 && w[0].terms == std::vector<Natural>{5, 139, 353, 967, 3581};
  log << "  walker windows at d=114: " << w.size() << (wok ? "" : "  <- FAIL") << "\n";
  return ok && wok;
}

// --------------------------------------------------------------------------
// 3. the published common-factor table, k = 2..103

bool c3(std::ostream& log) {
  struct Row {
    unsigned klo, khi, p;
    const char* label;
  };
  static const Row rows[] = {
      {2, 2, 2, "1"},         {3, 3, 3, "2"},          {4, 4, 5, "2"},
      {5, 5, 5, "3#"},        {6, 7, 7, "3#"},         {8, 11, 11, "5#"},
      {12, 13, 13, "7#"},     {14, 17, 17, "5#"},      {18, 18, 19, "7#"},
      {19, 19, 19, "11#"},    {20, 23, 23, "11#"},     {24, 29, 29, "13#"},
      {30, 31, 31, "13#"},    {32, 37, 37, "19*11#"},  {38, 41, 41, "13#"},
      {42, 42, 43, "17#"},    {43, 43, 43, "19#"},     {44, 47, 47, "23*17#"},
      {48, 53, 53, "17#"},    {54, 54, 59, "29*13#"},  {55, 58, 59, "29*19*13#"},
      {59, 59, 59, "29*19#"}, {60, 61, 61, "31*19*13#"}, {62, 67, 67, "31*19#"},
      {68, 71, 71, "17#"},    {72, 73, 73, "37*23*17#"}, {74, 79, 79, "23#"},
      {80, 83, 83, "41*19#"}, {84, 89, 89, "31*23#"},  {90, 97, 97, "23#"},
      {98, 99, 101, "23#"},   {100, 101, 101, "31*23#"}, {102, 103, 103, "23#"},
  };
  static_assert(sizeof(rows) / sizeof(rows[0]) == 33);

  auto t0 = Clock::now();
  bool ok = true;
  unsigned mismatches = 0;
  for (const auto& row : rows) {
    const char* label = row.label;
    for (unsigned k = row.klo; k <= row.khi; ++k) {
      Natural p = smallest_prime_geq(k);
      if (p != row.p) {
        log << "  k=" << k << ": generating prime " << p.get_str() << " != " << row.p << "\n";
        ok = false;
        continue;
      }
      auto cert = common_factor(p, p, k);
      std::string got = cert.label();
      if (got != label) {
        ++mismatches;
        ok = false;
        log << "  k=" << k << " p=" << row.p << ": printed " << label << ", computed " << got
            << "\n";
      }
    }
  }
  double el = secs_since(t0);
  log << "  full table in " << el << "s (bound 5s)\n";
  if (mismatches) {
    log << "  " << mismatches << " k-values disagree with the printed table; the residue\n"
        << "  method itself yields the computed labels (d == 11 mod 23 survives every\n"
        << "  window up to k=97 at p=97, so 23 is not forced there, and q=29 is forced\n"
        << "  at p=103), so the printed rows 90-97 and 102-103 are defective.\n";
  }
  return ok && el < 5.0;
}

// --------------------------------------------------------------------------
// 4. the non-minimal certificate list

bool c4(std::ostream& log) {
  struct Entry {
    unsigned k;
    const char* p1;
    const char* r;
    const char* factor;  // nullptr: compute and record only
  };
  static const Entry entries[] = {
      {3, "5", "7", "3#"},
      {3, "2^521-1", "19", "3#"},
      {4, "11", "35", "2#"},
      {4, "2^521-1", "5", "2#"},
      {5, "47", "2^31-1", "3#"},
      {7, "7", "11", "5#"},
      {7, "7", "13", "3#"},
      {7, "7", "17", "3#"},
      {7, "7", "19", "3#"},
      {7, "11", "7", "3#"},
      {7, "11", "13", "3#"},
      {7, "11", "17", "3#"},
      {7, "13", "7", "3#"},
      {7, "17", "7", nullptr},  // printed as a bare "#": ambiguous
      {7, "19", "7", "3#"},
      {7, "19", "23", "3#"},
      {7, "23", "19", "3#"},
      {11, "11", "13", "7#"},
      {11, "13", "11", "5#"},
  };
  bool ok = true;
  for (const auto& e : entries) {
    auto cert = common_factor(parse_natural_expr(e.p1), parse_natural_expr(e.r), e.k);
    if (e.factor == nullptr) {
      log << "  (" << e.k << ": " << e.p1 << ", " << e.r << ", #) recorded as "
          << cert.common_factor.get_str() << " = " << cert.label() << "\n";
      continue;
    }
    Natural want = parse_natural_expr(e.factor);
    bool good = cert.common_factor == want;
    if (!good) {
      log << "  (" << e.k << ": " << e.p1 << ", " << e.r << ", " << e.factor << ") computed "
          << cert.label() << "  <- FAIL\n";
    }
    ok = ok && good;
  }
  log << "  18 fixed entries checked, 1 ambiguous entry recorded\n";
  return ok;
}

// --------------------------------------------------------------------------
// 5. global primorial divisibility

bool c5(std::ostream& log) {
  bool ok = true;
  for (unsigned k = 5; k <= 103; ++k) {
    Natural p = smallest_prime_geq(k);
    Natural f = common_factor(p, p, k).common_factor;
    auto need = [&](unsigned n, unsigned kmin) {
      if (k < kmin) return;
      if (f % primorial(n) != 0) {
        log << "  k=" << k << ": factor " << f.get_str() << " not divisible by " << n << "#\n";
        ok = false;
      }
    };
    need(3, 5);
    need(5, 8);
    need(7, 18);
    need(11, 19);
    need(13, 38);
  }
  log << "  divisibility of all minimal factors for k = 5..103 checked\n";
  return ok;
}

// --------------------------------------------------------------------------
// 6. miscellaneous-table spot checks

bool c6(std::ostream& log) {
  bool ok = true;
  auto check_row = [&](const char* p1, const char* r, const char* d, unsigned k,
                       std::size_t dig_first, std::size_t dig_last, double budget) {
    auto t0 = Clock::now();
    auto v = verify_gap(GapTriple{parse_natural_expr(p1), parse_natural_expr(r),
                                  parse_integer_expr(d)},
                        k);
    double el = secs_since(t0);
    bool good = v.ok() && el < budget;
    if (good && dig_first) good = v.instance->digits_first() == dig_first;
    if (good && dig_last) good = v.instance->digits_last() == dig_last;
    log << "  (" << p1 << ", " << r << ", " << d << ", k=" << k << "): "
        << (v.ok() ? "verified" : "FAILED");
    if (v.ok())
      log << " digits " << v.instance->digits_first() << "/" << v.instance->digits_last();
    log << " (" << el << "s)" << (good ? "" : "  <- FAIL") << "\n";
    ok = ok && good;
  };
  check_row("5", "7", "24", 3, 0, 0, 60);
  check_row("11", "35", "24", 4, 0, 0, 60);
  check_row("17", "17", "7700(5#)", 10, 0, 0, 60);
  check_row("13", "11", "129262(5#)", 11, 0, 0, 60);
  check_row("2^127-1", "3", "7390", 3, 39, 40, 120);
  check_row("2^521-1", "3", "1106", 3, 157, 158, 120);
  return ok;
}

// --------------------------------------------------------------------------
// 7. shifted windows

bool c7(std::ostream& log) {
  auto runs = shifted_search(GapTriple{5, 5, 4}, 9, 3);
  bool aok = runs.size() == 1 && runs[0].start_j == 7 && runs[0].k == 3 &&
             runs[0].terms == std::vector<Natural>{390653, 1953157, 9765661};
  log << "  (5,5,4): shifted GAP-3 at j=7 " << (aok ? "found" : "NOT FOUND") << "\n";

  static const char* listed[] = {
      "1084552771",     "1446403573",     "1812367159",      "2231796937",     "3346287211",
      "13496563933",    "141112064479",   "1795775474737",   "23302061711251", "302879444689093"};
  std::vector<Natural> terms;
  for (const char* s : listed) terms.emplace_back(s);

  // all ten listed values must be prime
  bool bok = true;
  for (const auto& t : terms) bok = bok && passes_primality(t);

  // and consecutive terms of 13*13^j + j*d: recover d from the first term at
  // j = 3, then check every position
  Natural d = (terms[0] - pow_natural(13, 4)) / 3;
  for (unsigned i = 0; i < terms.size(); ++i) {
    Natural expect = Natural(13) * pow_natural(13, 3 + i) + Natural(3 + i) * d;
    if (expect != terms[i]) bok = false;
  }
  log << "  section-2 GAP-10: ten listed terms prime and consecutive with d=" << d.get_str()
      << (bok ? "" : "  <- FAIL") << "\n";
  return aok && bok;
}

// --------------------------------------------------------------------------
// 8. filter soundness against brute force

bool c8(std::ostream& log) {
  std::mt19937_64 rng(0x6a70);
  const std::uint32_t q_max = 50;
  const unsigned long odd_primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  unsigned violations = 0;
  std::uint64_t windows_found = 0;
  for (int trial = 0; trial < 100; ++trial) {
    unsigned long p1 = odd_primes[rng() % 14];
    unsigned long r = 1 + 2 * static_cast<unsigned long>(rng() % 25);  // odd, <= 49
    unsigned k = 2 + static_cast<unsigned>(rng() % 6);                 // 2..7
    auto cert = common_factor(p1, r, k, q_max);
    for (std::uint64_t d = 1; d <= 100000; ++d) {
      bool all_prime = true;
      bool all_big = true;
      mpz_class pw(static_cast<unsigned long>(p1)), t;
      for (unsigned j = 0; j < k && all_prime; ++j) {
        t = pw + mpz_class(static_cast<unsigned long>(j)) * d;
        if (t <= q_max) all_big = false;
        if (mpz_probab_prime_p(t.get_mpz_t(), 25) == 0) all_prime = false;
        pw *= r;
      }
      if (!all_prime || !all_big) continue;
      ++windows_found;
      if (cert.impossible || mpz_class(static_cast<unsigned long>(d)) % cert.common_factor != 0) {
        ++violations;
        log << "  violation: p1=" << p1 << " r=" << r << " k=" << k << " d=" << d << " factor="
            << cert.common_factor.get_str() << (cert.impossible ? " (impossible)" : "") << "\n";
      }
    }
  }
  log << "  100 triples, " << windows_found << " verified windows, " << violations
      << " violations\n";
  return violations == 0;
}

// --------------------------------------------------------------------------
// 9. forced-composite positions of the found instances

bool c9(std::ostream& log) {
  struct Inst {
    unsigned k;
    unsigned long p;
    Natural d;
  };
  std::vector<Inst> insts;
  const std::pair<unsigned, unsigned long> table[] = {{2, 1},      {3, 2},      {4, 6},
                                                      {5, 84},     {6, 144},    {7, 3324},
                                                      {8, 62610},  {9, 903030}, {10, 903030},
                                                      {11, 443687580}};
  for (auto [k, d] : table)
    insts.push_back({k, to_u64(smallest_prime_geq(k)), Natural(static_cast<unsigned long>(d))});
  insts.push_back({5, 5, Natural(114)});  // the walker window of criterion 2

  bool ok = true;
  for (const auto& in : insts) {
    GapTriple t{Natural(in.p), Natural(in.p), in.d};
    if (!verify_gap(t, in.k, 0).ok()) {
      log << "  (" << in.p << "," << in.p << "," << in.d.get_str() << ") no longer verifies\n";
      ok = false;
      continue;
    }
    // p' = min(p1, spf(r)) = p for these instances
    for (unsigned n = 1; n <= 3; ++n) {
      unsigned j = static_cast<unsigned>(in.p) * n;
      Integer val = term(t, j);
      if (passes_primality(val)) {
        log << "  term at j=" << j << " of (" << in.p << "," << in.p << "," << in.d.get_str()
            << ") unexpectedly prime\n";
        ok = false;
      }
    }
  }
  log << "  " << insts.size() << " instances, positions j = p', 2p', 3p' all composite"
      << (ok ? "" : " EXCEPT ABOVE") << "\n";
  return ok;
}

// --------------------------------------------------------------------------
// 10. desk-scale tail scan of the minimal triples

bool c10(std::ostream& log) {
  const std::tuple<unsigned, unsigned long, unsigned long> triples[] = {
      {3, 3, 2}, {4, 5, 6}, {5, 5, 84}, {6, 7, 144}, {7, 7, 3324}, {8, 11, 62610}};
  bool ok = true;
  for (const auto& [k, p, d] : triples) {
    auto rep = tail_scan(GapTriple{Natural(p), Natural(p), Natural(d)}, k, 300);
    bool good = rep.base_gap_verified && rep.max_order_found <= 2 && !rep.truncated;
    log << "  (" << p << "," << p << "," << d << ") k=" << k
        << ": max order in tail = " << rep.max_order_found << ", " << rep.windows.size()
        << " pair window(s)" << (good ? "" : "  <- FAIL") << "\n";
    ok = ok && good;
  }
  return ok;
}

// --------------------------------------------------------------------------
// 11. catalog round trip and the recorded reference sequence

bool c11(std::ostream& log) {
  auto seq = difference_sequence_count(2, 2, 2, 60);
  ReferenceClient client({{}, GAPK_FIXTURE_DIR, true});
  BFile ref = client.fetch("A172367");
  auto rep = compare(seq, ref);
  bool aok = rep.mismatches == 0 && rep.matches >= 50;
  log << "  minimal GAP-2 vs reference: " << rep.summary() << "\n";

  // export -> parse is the identity
  BFile round = parse_bfile(export_bfile(seq, 1, {"minimal GAP-2 differences"}));
  bool bok = round.entries.size() == seq.terms.size() && round.offset == 1;
  for (std::size_t i = 0; bok && i < seq.terms.size(); ++i) {
    bok = round.entries[i].index == static_cast<long long>(i + 1) &&
          round.entries[i].value == seq.terms[i];
  }
  log << "  b-file round trip: " << (bok ? "identity" : "NOT identity") << "\n";
  return aok && bok;
}

const Criterion kCriteria[] = {
    {1, "minimal differences for k = 2..11", c1},
    {2, "published difference scan and window walk", c2},
    {3, "common-factor table k = 2..103", c3},
    {4, "non-minimal certificate list", c4},
    {5, "global primorial divisibility", c5},
    {6, "miscellaneous-table spot checks", c6},
    {7, "shifted windows", c7},
    {8, "filter soundness vs brute force", c8},
    {9, "forced-composite positions", c9},
    {10, "tail scans of the minimal triples", c10},
    {11, "catalog round trip and reference match", c11},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
      continue;
    std::ostringstream log;
    bool pass = false;
    try {
      pass = c.fn(log);
    } catch (const std::exception& e) {
      log << "  exception: " << e.what() << "\n";
    }
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "\n"
              << log.str();
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
