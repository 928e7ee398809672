// Difference-sequence cataloging: generation of the admissible-d sequences
// for a fixed (k, p1, r), b-file export/ingest, and diffs against reference
// sequence data.

#pragma once

#include "gapk/search.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapk {

struct DifferenceSequence {
  unsigned k = 2;
  Natural p1;
  Natural r;
  std::optional<std::string> oeis_id;
  std::vector<Natural> terms;  // ascending, exhaustive below search_bound
  Natural search_bound;
};

struct BFileEntry {
  long long index = 0;
  Natural value;
};

struct BFile {
  std::vector<BFileEntry> entries;  // indices consecutive from offset
  long long offset = 1;
  std::vector<std::string> comments;  // leading '#' lines, markers stripped
};

// First `count` terms of the difference sequence (search bound grows until
// the count is reached, within hard_limit when nonzero).
DifferenceSequence difference_sequence_count(unsigned k, const Natural& p1, const Natural& r,
                                             std::size_t count, const SearchOptions& opt = {},
                                             const Natural& hard_limit = Natural(0));

// All terms <= bound.
DifferenceSequence difference_sequence_bound(unsigned k, const Natural& p1, const Natural& r,
                                             const Natural& bound, const SearchOptions& opt = {});

// One "index value" pair per line, ascending, trailing newline; comment
// lines prefixed '#' at the top.
std::string export_bfile(const DifferenceSequence& seq, long long offset = 1,
                         const std::vector<std::string>& comments = {});

class BFileParseError : public std::runtime_error {
 public:
  BFileParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

BFile parse_bfile(const std::string& text);

enum class EntryStatus { Match, Mismatch, Unverified, Missing };

struct CompareEntry {
  long long index = 0;
  EntryStatus status = EntryStatus::Match;
  std::optional<Natural> computed;
  std::optional<Natural> reference;
};

struct CompareReport {
  std::vector<CompareEntry> entries;
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t unverified = 0;  // reference entries beyond the computed range
  std::size_t missing = 0;     // computed terms beyond the reference

  bool all_match() const { return mismatches == 0; }
  std::string summary() const;
};

// Positional comparison: computed term i against the i-th reference entry.
CompareReport compare(const DifferenceSequence& seq, const BFile& reference);

// Retrieves b-files from the public sequence database, with a local disk
// cache (raw text, atomically replaced) and an optional read-only fixture
// directory consulted before the network. Offline mode never touches the
// network.
class ReferenceClient {
 public:
  struct Config {
    std::filesystem::path cache_dir;
    std::filesystem::path fixture_dir;  // optional
    bool offline = false;
    std::string host = "oeis.org";
  };

  explicit ReferenceClient(Config cfg);

  // id: letter + 6 digits, e.g. "A172367". Throws std::invalid_argument on a
  // malformed id and std::runtime_error when the file is unavailable.
  BFile fetch(const std::string& id);

  static bool valid_id(const std::string& id);
  static std::string bfile_name(const std::string& id);  // "b172367.txt"

 private:
  Config cfg_;
};

std::string to_json(const DifferenceSequence& seq);
std::string to_csv(const DifferenceSequence& seq);  // header "n,d"

}  // namespace gapk
