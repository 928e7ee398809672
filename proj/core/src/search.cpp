#include "gapk/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gapk {

namespace {

unsigned effective_workers(unsigned w) {
  if (w != 0) return w;
  unsigned hw = std::thread::hardware_concurrency();
  return hw != 0 ? hw : 1;
}

struct WindowPowers {
  std::vector<Natural> pw;        // p1 * r^(start_j + i), i = 0..k-1
  std::vector<unsigned long> jj;  // start_j + i
};

WindowPowers window_powers(const Natural& p1, const Natural& r, unsigned k, unsigned start_j) {
  WindowPowers w;
  w.pw.reserve(k);
  w.jj.reserve(k);
  Natural pw = p1 * pow_natural(r, start_j);
  for (unsigned i = 0; i < k; ++i) {
    w.pw.push_back(pw);
    w.jj.push_back(start_j + i);
    pw *= r;
  }
  return w;
}

void validate_spec(const SearchSpec& spec) {
  if (spec.p1 < 1 || spec.r < 1) throw std::invalid_argument("runner: p1 and r must be >= 1");
  if (spec.k < 2 || spec.k > 10000) throw std::invalid_argument("runner: k out of range");
  if (spec.d_min < 0 || spec.d_min > spec.d_max)
    throw std::invalid_argument("runner: need 0 <= d_min <= d_max");
  if (spec.stride && *spec.stride < 1) throw std::invalid_argument("runner: stride must be >= 1");
  if (spec.block_size == 0) throw std::invalid_argument("runner: block_size must be >= 1");
}

}  // namespace

SearchResult runner(const SearchSpec& spec) {
  validate_spec(spec);
  const auto t0 = std::chrono::steady_clock::now();

  SearchResult res;
  res.spec = spec;

  Natural stride;
  if (spec.stride) {
    stride = *spec.stride;
  } else {
    FactorCertificate cert = common_factor(spec.p1, spec.r, spec.k, spec.q_max, spec.start_j);
    if (cert.impossible) {
      std::ostringstream os;
      os << "no GAP-" << spec.k << " exists for p1=" << spec.p1.get_str()
         << " r=" << spec.r.get_str() << " (start_j=" << spec.start_j << "): the term at some index"
         << " is divisible by " << *cert.impossible_q << " for every d";
      res.impossible = true;
      res.impossible_reason = os.str();
      res.stride_used = 1;
      res.certificate = std::move(cert);
      return res;
    }
    stride = cert.common_factor;
    if (stride < 1) stride = 1;
    res.certificate = std::move(cert);
  }
  res.stride_used = stride;

  // First candidate on the stride grid.
  Natural first = ((spec.d_min + stride - 1) / stride) * stride;
  if (first > spec.d_max) {
    res.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  }
  Natural count_z = (spec.d_max - first) / stride + 1;
  if (!fits_u64(count_z)) throw std::invalid_argument("runner: candidate range too large");
  const std::uint64_t n_cand = to_u64(count_z);

  std::atomic<std::uint64_t> candidates{0};
  std::atomic<std::uint64_t> calls{0};

  // With start_j = 0 the first term of every candidate window is p1 itself:
  // verify it once and skip it per candidate.
  unsigned i0 = 0;
  if (spec.start_j == 0) {
    calls.fetch_add(1, std::memory_order_relaxed);
    if (!passes_primality(spec.p1, spec.rounds)) {
      res.stats.candidates_tested = 0;
      res.stats.primality_calls = 1;
      res.stats.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return res;
    }
    i0 = 1;
  }

  const WindowPowers wp = window_powers(spec.p1, spec.r, spec.k, spec.start_j);

  // Whole search fits 64-bit arithmetic when the largest possible term does.
  Natural max_term = wp.pw.back() + Natural(wp.jj.back()) * spec.d_max;
  const bool fast = fits_u64(first) && fits_u64(stride) &&
                    mpz_sizeinbase(max_term.get_mpz_t(), 2) <= 62;

  const std::uint64_t block = spec.block_size;
  const std::uint64_t n_blocks = (n_cand + block - 1) / block;
  std::vector<std::vector<Natural>> hits(n_blocks);
  std::atomic<std::uint64_t> next_block{0};

  std::vector<std::uint64_t> pw64;
  std::uint64_t first64 = 0, stride64 = 0;
  if (fast) {
    for (const auto& p : wp.pw) pw64.push_back(to_u64(p));
    first64 = to_u64(first);
    stride64 = to_u64(stride);
  }

  auto scan_blocks = [&]() {
    std::uint64_t local_cand = 0, local_calls = 0;
    Natural d, t;
    for (;;) {
      const std::uint64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
      if (b >= n_blocks) break;
      const std::uint64_t lo = b * block;
      const std::uint64_t hi = std::min(n_cand, lo + block);
      std::vector<Natural> local_hits;
      if (fast) {
        for (std::uint64_t ci = lo; ci < hi; ++ci) {
          const std::uint64_t dv = first64 + ci * stride64;
          ++local_cand;
          bool ok = true;
          for (unsigned i = i0; i < spec.k; ++i) {
            ++local_calls;
            if (!is_prime_u64(pw64[i] + wp.jj[i] * dv)) {
              ok = false;
              break;
            }
          }
          if (ok) local_hits.emplace_back(static_cast<unsigned long>(dv));
        }
      } else {
        d = first + Natural(lo) * stride;
        for (std::uint64_t ci = lo; ci < hi; ++ci) {
          ++local_cand;
          bool ok = true;
          for (unsigned i = i0; i < spec.k; ++i) {
            t = wp.pw[i];
            mpz_addmul_ui(t.get_mpz_t(), d.get_mpz_t(), wp.jj[i]);
            ++local_calls;
            if (!passes_primality(t, spec.rounds)) {
              ok = false;
              break;
            }
          }
          if (ok) local_hits.push_back(d);
          d += stride;
        }
      }
      hits[b] = std::move(local_hits);
    }
    candidates.fetch_add(local_cand, std::memory_order_relaxed);
    calls.fetch_add(local_calls, std::memory_order_relaxed);
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(effective_workers(spec.workers), n_blocks));
  if (workers <= 1) {
    scan_blocks();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan_blocks);
    for (auto& th : pool) th.join();
  }

  for (auto& h : hits)
    for (auto& d : h) res.differences.push_back(std::move(d));

  res.stats.candidates_tested = candidates.load();
  res.stats.primality_calls = calls.load();
  res.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::vector<GapInstance> walker(const GapTriple& t, unsigned k, unsigned j_lo, unsigned j_hi,
                                int rounds) {
  if (k < 2 || k > 10000) throw std::invalid_argument("walker: k out of range");
  if (j_hi < j_lo) throw std::invalid_argument("walker: j_hi < j_lo");
  const unsigned top = j_hi + k - 1;

  std::vector<Integer> vals(top - j_lo + 1);
  {
    Natural pw = t.p1 * pow_natural(t.r, j_lo);
    for (unsigned j = j_lo; j <= top; ++j) {
      vals[j - j_lo] = pw + Integer(static_cast<unsigned long>(j)) * t.d;
      pw *= t.r;
    }
  }
  // verdict cache: -1 unknown, 0 composite/invalid, 1 prime
  std::vector<signed char> known(vals.size(), -1);
  std::vector<std::optional<PrimalityVerdict>> verdicts(vals.size());
  auto prime_at = [&](unsigned j) {
    const std::size_t idx = j - j_lo;
    if (known[idx] < 0) {
      if (vals[idx] < 2) {
        known[idx] = 0;
      } else {
        verdicts[idx] = is_prime(vals[idx], rounds);
        known[idx] = verdicts[idx]->passed() ? 1 : 0;
      }
    }
    return known[idx] == 1;
  };

  std::vector<GapInstance> out;
  for (unsigned start = j_lo; start <= j_hi; ++start) {
    bool ok = true;
    for (unsigned i = 0; i < k; ++i) {
      if (!prime_at(start + i)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    GapInstance inst;
    inst.triple = t;
    inst.start_j = start;
    inst.k = k;
    for (unsigned i = 0; i < k; ++i) {
      inst.terms.push_back(Natural(vals[start + i - j_lo]));
      inst.verdicts.push_back(*verdicts[start + i - j_lo]);
    }
    out.push_back(std::move(inst));
  }
  return out;
}

// ---------------------------------------------------------------------------
// frontier store

FrontierStore::FrontierStore(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    unsigned k = 0;
    std::string p1s, rs, ds;
    if (!(is >> k >> p1s >> rs >> ds)) continue;
    entries_.push_back(Entry{k, Natural(p1s), Natural(rs), Natural(ds)});
  }
}

std::optional<Natural> FrontierStore::lookup(unsigned k, const Natural& p1,
                                             const Natural& r) const {
  for (const auto& e : entries_)
    if (e.k == k && e.p1 == p1 && e.r == r) return e.highest_d;
  return std::nullopt;
}

void FrontierStore::update(unsigned k, const Natural& p1, const Natural& r,
                           const Natural& highest_d) {
  for (auto& e : entries_) {
    if (e.k == k && e.p1 == p1 && e.r == r) {
      if (highest_d > e.highest_d) {
        e.highest_d = highest_d;
        save();
      }
      return;
    }
  }
  entries_.push_back(Entry{k, p1, r, highest_d});
  save();
}

void FrontierStore::save() const {
  std::filesystem::path tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << "# k p1 r highest_d_searched\n";
    for (const auto& e : entries_)
      out << e.k << ' ' << e.p1.get_str() << ' ' << e.r.get_str() << ' '
          << e.highest_d.get_str() << '\n';
  }
  std::filesystem::rename(tmp, path_);
}

MinimalGapResult minimal_gap(unsigned k, const Natural& d_bound, const SearchOptions& opt,
                             FrontierStore* frontier) {
  if (k < 2 || k > 10000) throw std::invalid_argument("minimal_gap: k out of range");
  MinimalGapResult res;
  res.k = k;
  res.p = smallest_prime_geq(k);

  FactorCertificate cert = common_factor(res.p, res.p, k, opt.q_max);
  Natural stride = cert.impossible ? Natural(1) : cert.common_factor;
  if (stride < 1) stride = 1;
  res.stride_used = stride;
  if (cert.impossible) {
    res.searched_below = 0;
    return res;
  }

  Natural lo = 0;
  if (frontier) {
    if (auto f = frontier->lookup(k, res.p, res.p)) lo = *f + 1;
  }
  if (lo > 0) res.searched_below = lo - 1;

  const std::uint64_t chunk_candidates = 1 << 16;
  const Natural chunk_span = stride * chunk_candidates;

  while (lo <= d_bound) {
    Natural hi = lo + chunk_span - 1;
    if (hi > d_bound) hi = d_bound;

    SearchSpec spec;
    spec.p1 = res.p;
    spec.r = res.p;
    spec.k = k;
    spec.d_min = lo;
    spec.d_max = hi;
    spec.stride = stride;
    spec.workers = opt.workers;
    spec.rounds = opt.rounds;
    spec.q_max = opt.q_max;
    SearchResult sr = runner(spec);
    res.stats.candidates_tested += sr.stats.candidates_tested;
    res.stats.primality_calls += sr.stats.primality_calls;
    res.stats.elapsed_seconds += sr.stats.elapsed_seconds;

    if (!sr.differences.empty()) {
      const Natural& d = sr.differences.front();
      GapTriple t{res.p, res.p, d};
      VerifyOutcome v = verify_gap(t, k, 0, opt.rounds);
      if (!v.ok()) throw std::logic_error("minimal_gap: candidate failed re-verification");
      res.triple = t;
      res.instance = std::move(v.instance);
      res.searched_below = d;
      if (frontier) frontier->update(k, res.p, res.p, hi);
      return res;
    }
    if (frontier) frontier->update(k, res.p, res.p, hi);
    res.searched_below = hi;
    lo = hi + 1;
  }
  return res;
}

std::vector<GapInstance> shifted_search(const GapTriple& t, unsigned j_max, unsigned min_order,
                                        int rounds, std::size_t digit_cap) {
  if (min_order < 2) throw std::invalid_argument("shifted_search: min_order must be >= 2");
  std::vector<GapInstance> out;

  Natural pw = t.p1;
  std::optional<unsigned> run_start;
  std::vector<Natural> run_terms;
  std::vector<PrimalityVerdict> run_verdicts;

  auto close_run = [&](unsigned end_j) {
    if (!run_start) return;
    const unsigned order = end_j - *run_start;
    if (*run_start <= j_max && order >= min_order) {
      GapInstance inst;
      inst.triple = t;
      inst.start_j = *run_start;
      inst.k = order;
      inst.terms = std::move(run_terms);
      inst.verdicts = std::move(run_verdicts);
      out.push_back(std::move(inst));
    }
    run_start.reset();
    run_terms.clear();
    run_verdicts.clear();
  };

  for (unsigned j = 0;; ++j) {
    if (!run_start && j > j_max) break;
    Integer val = pw + Integer(static_cast<unsigned long>(j)) * t.d;
    if (digits10(val) > digit_cap) {
      close_run(j);
      break;
    }
    bool prime = false;
    std::optional<PrimalityVerdict> verdict;
    if (val >= 2) {
      verdict = is_prime(val, rounds);
      prime = verdict->passed();
    }
    if (prime) {
      if (!run_start) run_start = j;
      run_terms.push_back(Natural(val));
      run_verdicts.push_back(std::move(*verdict));
    } else {
      close_run(j);
    }
    pw *= t.r;
  }
  return out;
}

TailScanReport tail_scan(const GapTriple& t, unsigned k, unsigned j_max, int rounds,
                         std::size_t digit_cap) {
  if (k < 2 || k > 10000) throw std::invalid_argument("tail_scan: k out of range");
  TailScanReport rep;
  rep.triple = t;
  rep.j_lo = k;
  rep.j_hi = j_max;
  if (j_max < k) return rep;

  rep.base_gap_verified = verify_gap(t, k, 0, rounds).ok();

  // The forced-composite index period: the smaller of p1 and spf(r), when
  // defined. Terms at multiples of it are divisible by it.
  std::optional<std::uint64_t> period;
  if (t.p1 >= 2 && fits_u64(t.p1)) period = to_u64(t.p1);
  if (t.r >= 2) {
    Natural spf = smallest_prime_factor(t.r);
    if (fits_u64(spf)) {
      std::uint64_t s = to_u64(spf);
      if (!period || s < *period) period = s;
    }
  }

  Natural pw = t.p1 * pow_natural(t.r, k);
  std::optional<unsigned> run_start;
  unsigned scanned_hi = j_max;

  auto close_run = [&](unsigned end_j) {
    if (!run_start) return;
    const unsigned order = end_j - *run_start;
    rep.max_order_found = std::max(rep.max_order_found, order);
    if (order >= 2) rep.windows.push_back(TailWindow{*run_start, order});
    run_start.reset();
  };

  for (unsigned j = k; j <= j_max; ++j) {
    Integer val = pw + Integer(static_cast<unsigned long>(j)) * t.d;
    if (digits10(val) > digit_cap) {
      rep.truncated = true;
      rep.truncated_at_j = j;
      scanned_hi = j - 1;
      break;
    }
    const bool prime = val >= 2 && passes_primality(val, rounds);
    if (period && j % *period == 0 && val > 0 && Natural(*period) < val) {
      if (prime) throw std::logic_error("tail_scan: forced-composite index tested prime");
    }
    if (prime) {
      if (!run_start) run_start = j;
    } else {
      close_run(j);
    }
    pw *= t.r;
  }
  close_run(scanned_hi + 1);
  rep.j_hi = scanned_hi;
  return rep;
}

}  // namespace gapk
