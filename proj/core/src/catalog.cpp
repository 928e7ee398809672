#include "gapk/catalog.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gapk {

namespace {

SearchSpec sequence_spec(unsigned k, const Natural& p1, const Natural& r, const Natural& lo,
                         const Natural& hi, const SearchOptions& opt) {
  SearchSpec spec;
  spec.p1 = p1;
  spec.r = r;
  spec.k = k;
  spec.d_min = lo;
  spec.d_max = hi;
  spec.workers = opt.workers;
  spec.rounds = opt.rounds;
  spec.q_max = opt.q_max;
  return spec;
}

void reject_impossible(const SearchResult& sr) {
  if (sr.impossible) throw std::runtime_error(sr.impossible_reason);
}

// Windows of length >= 3 need an odd start and ratio (else alternate terms
// are even); a count-driven search over such parameters would never finish.
void reject_parity_dead_end(unsigned k, const Natural& p1, const Natural& r) {
  if (k >= 3 && (is_even(p1) || is_even(r)))
    throw std::runtime_error("no GAP-" + std::to_string(k) +
                             " exists: an even start or ratio forces even terms");
}

}  // namespace

DifferenceSequence difference_sequence_bound(unsigned k, const Natural& p1, const Natural& r,
                                             const Natural& bound, const SearchOptions& opt) {
  DifferenceSequence seq;
  seq.k = k;
  seq.p1 = p1;
  seq.r = r;
  seq.search_bound = bound;
  SearchResult sr = runner(sequence_spec(k, p1, r, 0, bound, opt));
  reject_impossible(sr);
  seq.terms = std::move(sr.differences);
  return seq;
}

DifferenceSequence difference_sequence_count(unsigned k, const Natural& p1, const Natural& r,
                                             std::size_t count, const SearchOptions& opt,
                                             const Natural& hard_limit) {
  reject_parity_dead_end(k, p1, r);
  DifferenceSequence seq;
  seq.k = k;
  seq.p1 = p1;
  seq.r = r;
  Natural limit = hard_limit;
  if (limit == 0) limit = Natural("1000000000000");

  Natural lo = 0;
  Natural span = 4096;
  while (seq.terms.size() < count) {
    if (lo > limit)
      throw std::runtime_error("difference sequence: count not reached below " + limit.get_str());
    Natural hi = lo + span - 1;
    if (hi > limit) hi = limit;
    SearchResult sr = runner(sequence_spec(k, p1, r, lo, hi, opt));
    reject_impossible(sr);
    for (auto& d : sr.differences) seq.terms.push_back(std::move(d));
    seq.search_bound = hi;
    lo = hi + 1;
    span *= 2;
  }
  if (seq.terms.size() > count) {
    seq.terms.resize(count);
    // exhaustive up to (and including) the last kept term
    seq.search_bound = seq.terms.back();
  }
  return seq;
}

std::string export_bfile(const DifferenceSequence& seq, long long offset,
                         const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << "\n";
  long long idx = offset;
  for (const auto& t : seq.terms) os << idx++ << " " << t.get_str() << "\n";
  return os.str();
}

BFile parse_bfile(const std::string& text) {
  BFile out;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  bool saw_entry = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      // only a trailing newline may produce an empty final chunk
      if (is.peek() == std::char_traits<char>::eof()) continue;
      throw BFileParseError(lineno, "blank line");
    }
    if (line[0] == '#') {
      if (saw_entry) throw BFileParseError(lineno, "comment after entries");
      out.comments.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1));
      continue;
    }
    std::istringstream ls(line);
    long long idx = 0;
    std::string value;
    if (!(ls >> idx >> value)) throw BFileParseError(lineno, "expected \"index value\"");
    std::string extra;
    if (ls >> extra) throw BFileParseError(lineno, "trailing content");
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), value.c_str(), 10) != 0 || v < 0)
      throw BFileParseError(lineno, "bad value \"" + value + "\"");
    if (!saw_entry) {
      out.offset = idx;
    } else if (idx != out.entries.back().index + 1) {
      throw BFileParseError(lineno, "non-consecutive index " + std::to_string(idx));
    }
    out.entries.push_back(BFileEntry{idx, Natural(v)});
    saw_entry = true;
  }
  return out;
}

std::string CompareReport::summary() const {
  std::ostringstream os;
  os << (all_match() ? "OK" : "MISMATCH") << ": " << matches << " match";
  if (mismatches) os << ", " << mismatches << " mismatch";
  if (unverified) os << ", " << unverified << " unverified (reference beyond computed range)";
  if (missing) os << ", " << missing << " missing from reference";
  return os.str();
}

CompareReport compare(const DifferenceSequence& seq, const BFile& reference) {
  CompareReport rep;
  const std::size_t nc = seq.terms.size();
  const std::size_t nr = reference.entries.size();
  for (std::size_t i = 0; i < std::max(nc, nr); ++i) {
    CompareEntry e;
    e.index = reference.offset + static_cast<long long>(i);
    if (i < nc) e.computed = seq.terms[i];
    if (i < nr) {
      e.index = reference.entries[i].index;
      e.reference = reference.entries[i].value;
    }
    if (i < nc && i < nr) {
      e.status = (*e.computed == *e.reference) ? EntryStatus::Match : EntryStatus::Mismatch;
      ++(e.status == EntryStatus::Match ? rep.matches : rep.mismatches);
    } else if (i < nr) {
      e.status = EntryStatus::Unverified;
      ++rep.unverified;
    } else {
      e.status = EntryStatus::Missing;
      ++rep.missing;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// reference client

ReferenceClient::ReferenceClient(Config cfg) : cfg_(std::move(cfg)) {}

bool ReferenceClient::valid_id(const std::string& id) {
  if (id.size() != 7) return false;
  if (!std::isalpha(static_cast<unsigned char>(id[0]))) return false;
  for (std::size_t i = 1; i < id.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  return true;
}

std::string ReferenceClient::bfile_name(const std::string& id) {
  return "b" + id.substr(1) + ".txt";
}

namespace {

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace

BFile ReferenceClient::fetch(const std::string& id) {
  if (!valid_id(id)) throw std::invalid_argument("malformed sequence id \"" + id + "\"");
  const std::string name = bfile_name(id);

  if (!cfg_.cache_dir.empty()) {
    if (auto text = read_file(cfg_.cache_dir / name)) return parse_bfile(*text);
  }
  if (!cfg_.fixture_dir.empty()) {
    if (auto text = read_file(cfg_.fixture_dir / name)) return parse_bfile(*text);
  }
  if (cfg_.offline)
    throw std::runtime_error("reference " + id + " unavailable: offline and not cached");

  const std::string path = "/" + id + "/" + name;
  std::string body;
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
  {
    httplib::SSLClient cli(cfg_.host);
    cli.set_follow_location(true);
    cli.set_connection_timeout(10);
    auto res = cli.Get(path);
    if (!res || res->status != 200)
      throw std::runtime_error("reference " + id + " unavailable: fetch failed");
    body = res->body;
  }
#else
  {
    httplib::Client cli(cfg_.host);
    cli.set_follow_location(true);
    cli.set_connection_timeout(10);
    auto res = cli.Get(path);
    if (!res || res->status != 200)
      throw std::runtime_error("reference " + id + " unavailable: fetch failed");
    body = res->body;
  }
#endif
  BFile parsed = parse_bfile(body);  // reject malformed payloads before caching
  if (!cfg_.cache_dir.empty()) write_file_atomic(cfg_.cache_dir / name, body);
  return parsed;
}

std::string to_json(const DifferenceSequence& seq) {
  nlohmann::ordered_json j;
  j["k"] = seq.k;
  j["p1"] = seq.p1.get_str();
  j["r"] = seq.r.get_str();
  if (seq.oeis_id)
    j["oeis_id"] = *seq.oeis_id;
  else
    j["oeis_id"] = nullptr;
  j["search_bound"] = seq.search_bound.get_str();
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : seq.terms) terms.push_back(t.get_str());
  j["terms"] = std::move(terms);
  return j.dump(2) + "\n";
}

std::string to_csv(const DifferenceSequence& seq) {
  std::ostringstream os;
  os << "n,d\n";
  std::size_t n = 1;
  for (const auto& t : seq.terms) os << n++ << "," << t.get_str() << "\n";
  return os.str();
}

}  // namespace gapk
