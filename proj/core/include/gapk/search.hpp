// Search procedures: the runner (difference scan over a d-range), the walker
// (materialize full instances over a j-range), minimal-GAP search with
// frontier checkpoints, shifted-window search, and tail scans.

#pragma once

#include "gapk/filter.hpp"
#include "gapk/progression.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gapk {

struct SearchSpec {
  Natural p1;
  Natural r;
  unsigned k = 2;
  Natural d_min;
  Natural d_max;
  // Engaged: explicit stride >= 1. Empty: Auto, stride by the certificate's
  // common factor (the accelerator).
  std::optional<Natural> stride;
  unsigned start_j = 0;
  unsigned workers = 0;  // 0: hardware concurrency
  int rounds = kDefaultRounds;
  std::uint32_t q_max = kDefaultQMax;
  // Candidates per work block; results and stats are independent of both
  // workers and block_size.
  std::uint64_t block_size = 4096;
};

struct SearchStats {
  std::uint64_t candidates_tested = 0;
  std::uint64_t primality_calls = 0;
  double elapsed_seconds = 0.0;  // wall clock; excluded from json/csv output
};

struct SearchResult {
  SearchSpec spec;
  Natural stride_used;
  std::vector<Natural> differences;  // strictly ascending
  SearchStats stats;
  // Present when stride was Auto.
  std::optional<FactorCertificate> certificate;
  // The filter proved no GAP-k exists for this (p1, r, start_j).
  bool impossible = false;
  std::string impossible_reason;
};

// All d in [d_min, d_max] on the stride grid whose window verifies.
// Early-exits per candidate at the first composite term.
SearchResult runner(const SearchSpec& spec);

// Every window of k consecutive prime terms with start index in
// [j_lo, j_hi], fully materialized.
std::vector<GapInstance> walker(const GapTriple& t, unsigned k, unsigned j_lo, unsigned j_hi,
                                int rounds = kDefaultRounds);

struct SearchOptions {
  unsigned workers = 0;
  int rounds = kDefaultRounds;
  std::uint32_t q_max = kDefaultQMax;
};

struct MinimalGapResult {
  unsigned k = 0;
  Natural p;  // smallest prime >= k; the minimal start and ratio
  std::optional<GapTriple> triple;
  std::optional<GapInstance> instance;
  // Exhaustive frontier: every d <= searched_below on the stride grid was
  // tested. On success this is the winning d.
  Natural searched_below;
  Natural stride_used;
  SearchStats stats;

  bool found() const { return instance.has_value(); }
};

// Persisted search frontiers, one "k p1 r highest_d" record per line.
class FrontierStore {
 public:
  explicit FrontierStore(std::filesystem::path path);

  std::optional<Natural> lookup(unsigned k, const Natural& p1, const Natural& r) const;
  void update(unsigned k, const Natural& p1, const Natural& r, const Natural& highest_d);
  const std::filesystem::path& path() const { return path_; }

 private:
  struct Entry {
    unsigned k;
    Natural p1, r, highest_d;
  };
  void save() const;  // atomic replace
  std::filesystem::path path_;
  std::vector<Entry> entries_;
};

// Least d <= d_bound (stride Auto) completing the minimal GAP-k. A frontier
// store, when given, seeds the start of the scan and receives progress.
MinimalGapResult minimal_gap(unsigned k, const Natural& d_bound, const SearchOptions& opt = {},
                             FrontierStore* frontier = nullptr);

inline constexpr std::size_t kDefaultDigitCap = 5000;

// Maximal prime runs of order >= min_order whose start index lies in
// [0, j_max]. Runs extend past j_max until a composite term (or the digit cap).
std::vector<GapInstance> shifted_search(const GapTriple& t, unsigned j_max, unsigned min_order,
                                        int rounds = kDefaultRounds,
                                        std::size_t digit_cap = kDefaultDigitCap);

struct TailWindow {
  unsigned start_j = 0;
  unsigned order = 0;
};

struct TailScanReport {
  GapTriple triple;
  unsigned j_lo = 0;
  unsigned j_hi = 0;
  std::vector<TailWindow> windows;  // maximal disjoint runs of order >= 2
  unsigned max_order_found = 0;
  bool truncated = false;  // digit cap reached before j_max
  std::optional<unsigned> truncated_at_j;
  bool base_gap_verified = true;
};

// Scans j in [k, j_max] for prime runs beyond the defining GAP. Asserts
// internally that positions j = n*p' are composite (p' the smaller of p1 and
// spf(r)); a violation throws std::logic_error.
TailScanReport tail_scan(const GapTriple& t, unsigned k, unsigned j_max,
                         int rounds = kDefaultRounds, std::size_t digit_cap = kDefaultDigitCap);

}  // namespace gapk
