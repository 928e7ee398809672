// gapk -- search, verify and catalog primes in geometric-arithmetic
// progression (sequences p1 * r^j + j * d).
//
// Subcommands: verify, search, minimal, factor, catalog, scan-tail.
// Exit codes: 0 success, 1 negative finding, 2 usage or parse error.

#include "gapk/catalog.hpp"
#include "gapk/filter.hpp"
#include "gapk/numparse.hpp"
#include "gapk/progression.hpp"
#include "gapk/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  unsigned workers = 0;  // 0: all hardware threads
  int rounds = gapk::kDefaultRounds;
  std::size_t digit_cap = gapk::kDefaultDigitCap;
  std::uint32_t q_max = gapk::kDefaultQMax;
  std::string format = "table";
  bool offline = false;
  std::string frontier_path;
  std::string cache_dir;
  std::string fixture_dir;
};

std::string default_cache_dir() {
  if (const char* home = std::getenv("HOME"))
    return (std::filesystem::path(home) / ".cache" / "gapk").string();
  return ".gapk-cache";
}

ordered_json instance_json(const gapk::GapInstance& inst) {
  ordered_json j;
  j["k"] = inst.k;
  j["p1"] = inst.triple.p1.get_str();
  j["r"] = inst.triple.r.get_str();
  j["d"] = inst.triple.d.get_str();
  j["start_j"] = inst.start_j;
  ordered_json terms = ordered_json::array();
  for (const auto& t : inst.terms) terms.push_back(t.get_str());
  j["terms"] = std::move(terms);
  j["digits_first"] = inst.digits_first();
  j["digits_last"] = inst.digits_last();
  j["probable"] = inst.any_probable();
  return j;
}

void print_instance_table(std::ostream& os, const gapk::GapInstance& inst) {
  os << "GAP-" << inst.k << "  p1=" << inst.triple.p1.get_str() << " r=" << inst.triple.r.get_str()
     << " d=" << inst.triple.d.get_str() << " start_j=" << inst.start_j << "\n";
  for (unsigned i = 0; i < inst.k; ++i) {
    os << "  j=" << inst.start_j + i << "  " << inst.terms[i].get_str()
       << (inst.verdicts[i].verdict == gapk::Verdict::ProbablePrime ? "  (probable prime)"
                                                                    : "  (prime)")
       << "\n";
  }
  os << "digits of first: " << inst.digits_first() << "\n";
  os << "digits of last:  " << inst.digits_last() << "\n";
}

void print_instance_csv(std::ostream& os, const gapk::GapInstance& inst) {
  os << "j,term,digits,verdict\n";
  for (unsigned i = 0; i < inst.k; ++i) {
    os << inst.start_j + i << "," << inst.terms[i].get_str() << ","
       << gapk::digits10(inst.terms[i]) << ","
       << (inst.verdicts[i].verdict == gapk::Verdict::ProbablePrime ? "probable" : "prime")
       << "\n";
  }
}

const char* failure_text(gapk::FailureKind k) {
  switch (k) {
    case gapk::FailureKind::NonPositive: return "term is not positive";
    case gapk::FailureKind::LeadingOne: return "term is 1 (excluded; start at j=1)";
    case gapk::FailureKind::CompositeTerm: return "composite term";
  }
  return "?";
}

// ---------------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, const std::string& p1s, const std::string& rs,
               const std::string& ds, unsigned k, unsigned start_j) {
  gapk::GapTriple t{gapk::parse_natural_expr(p1s), gapk::parse_natural_expr(rs),
                    gapk::parse_integer_expr(ds)};
  gapk::VerifyOutcome out = gapk::verify_gap(t, k, start_j, cfg.rounds);
  if (out.exceeds_order_bound)
    std::cerr << "note: k=" << k << " exceeds the order bound for this start and ratio;"
              << " verification cannot succeed\n";
  if (out.ok()) {
    const auto& inst = *out.instance;
    if (cfg.format == "json") {
      std::cout << instance_json(inst).dump(2) << "\n";
    } else if (cfg.format == "csv") {
      print_instance_csv(std::cout, inst);
    } else {
      print_instance_table(std::cout, inst);
      std::cout << "result: verified GAP-" << inst.k
                << (inst.any_probable() ? " (some terms probable primes)" : "") << "\n";
    }
    return 0;
  }
  const auto& f = *out.failure;
  if (cfg.format == "json") {
    ordered_json j;
    j["k"] = k;
    j["p1"] = t.p1.get_str();
    j["r"] = t.r.get_str();
    j["d"] = t.d.get_str();
    j["start_j"] = start_j;
    j["verified"] = false;
    j["failing_j"] = f.failing_j;
    j["reason"] = failure_text(f.kind);
    if (f.verdict && f.verdict->witness) j["witness"] = f.verdict->witness->get_str();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "result: FAILED at j=" << f.failing_j << ": " << failure_text(f.kind);
    if (f.verdict && f.verdict->witness)
      std::cout << " (witness " << f.verdict->witness->get_str() << ")";
    std::cout << "\n";
  }
  return 1;
}

int cmd_search(const RunConfig& cfg, const std::string& p1s, const std::string& rs, unsigned k,
               const std::string& dmins, const std::string& dmaxs, const std::string& stride,
               unsigned start_j) {
  gapk::SearchSpec spec;
  spec.p1 = gapk::parse_natural_expr(p1s);
  spec.r = gapk::parse_natural_expr(rs);
  spec.k = k;
  spec.d_min = gapk::parse_natural_expr(dmins);
  spec.d_max = gapk::parse_natural_expr(dmaxs);
  if (stride != "auto") spec.stride = gapk::parse_natural_expr(stride);
  spec.start_j = start_j;
  spec.workers = cfg.workers;
  spec.rounds = cfg.rounds;
  spec.q_max = cfg.q_max;

  gapk::SearchResult res = gapk::runner(spec);
  if (res.impossible) {
    std::cerr << res.impossible_reason << "\n";
    if (cfg.format == "json") {
      ordered_json j;
      j["impossible"] = true;
      j["reason"] = res.impossible_reason;
      std::cout << j.dump(2) << "\n";
    }
    return 1;
  }
  std::cerr << "searched " << res.stats.candidates_tested << " candidates (stride "
            << res.stride_used.get_str() << ", " << res.stats.primality_calls
            << " primality calls, " << res.stats.elapsed_seconds << "s)\n";
  if (cfg.format == "json") {
    ordered_json j;
    j["p1"] = spec.p1.get_str();
    j["r"] = spec.r.get_str();
    j["k"] = k;
    j["d_min"] = spec.d_min.get_str();
    j["d_max"] = spec.d_max.get_str();
    j["start_j"] = start_j;
    j["stride"] = res.stride_used.get_str();
    ordered_json ds = ordered_json::array();
    for (const auto& d : res.differences) ds.push_back(d.get_str());
    j["differences"] = std::move(ds);
    j["count"] = res.differences.size();
    j["candidates_tested"] = res.stats.candidates_tested;
    j["primality_calls"] = res.stats.primality_calls;
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "n,d\n";
    std::size_t n = 1;
    for (const auto& d : res.differences) std::cout << n++ << "," << d.get_str() << "\n";
  } else {
    for (const auto& d : res.differences) std::cout << d.get_str() << "\n";
  }
  return res.differences.empty() ? 1 : 0;
}

int cmd_minimal(const RunConfig& cfg, unsigned k, const std::string& bound_s, bool resume) {
  gapk::Natural bound = gapk::parse_natural_expr(bound_s);
  gapk::SearchOptions opt{cfg.workers, cfg.rounds, cfg.q_max};
  std::optional<gapk::FrontierStore> store;
  if (!cfg.frontier_path.empty()) store.emplace(cfg.frontier_path);
  gapk::MinimalGapResult res =
      gapk::minimal_gap(k, bound, opt, store && resume ? &*store : nullptr);
  if (store && !resume && res.searched_below > 0)
    store->update(k, res.p, res.p, res.searched_below);

  std::cerr << "searched " << res.stats.candidates_tested << " candidates (stride "
            << res.stride_used.get_str() << ", " << res.stats.elapsed_seconds << "s)\n";
  if (res.found()) {
    if (cfg.format == "json") {
      std::cout << instance_json(*res.instance).dump(2) << "\n";
    } else if (cfg.format == "csv") {
      print_instance_csv(std::cout, *res.instance);
    } else {
      std::cout << "minimal GAP-" << k << ": p1 = r = " << res.p.get_str()
                << ", least d = " << res.searched_below.get_str() << "\n";
      print_instance_table(std::cout, *res.instance);
    }
    return 0;
  }
  if (cfg.format == "json") {
    ordered_json j;
    j["k"] = k;
    j["p"] = res.p.get_str();
    j["found"] = false;
    j["searched_below"] = res.searched_below.get_str();
    j["stride"] = res.stride_used.get_str();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "no minimal GAP-" << k << " with d <= " << bound.get_str()
              << "; frontier: every d <= " << res.searched_below.get_str() << " on stride "
              << res.stride_used.get_str() << " was searched\n";
  }
  return 1;
}

int cmd_factor(const RunConfig& cfg, unsigned k, std::string p1s, std::string rs,
               unsigned start_j) {
  gapk::Natural p1 =
      p1s.empty() ? gapk::smallest_prime_geq(k) : gapk::parse_natural_expr(p1s);
  gapk::Natural r = rs.empty() ? p1 : gapk::parse_natural_expr(rs);
  gapk::FactorCertificate cert = gapk::common_factor(p1, r, k, cfg.q_max, start_j);
  if (cfg.format == "json") {
    ordered_json j;
    j["k"] = k;
    j["p1"] = p1.get_str();
    j["r"] = r.get_str();
    j["start_j"] = start_j;
    j["q_max"] = cert.q_max;
    j["forced_primes"] = cert.forced_primes;
    j["common_factor"] = cert.common_factor.get_str();
    j["label"] = cert.label();
    j["impossible"] = cert.impossible;
    ordered_json as = ordered_json::array();
    for (const auto& a : cert.analyses) {
      ordered_json aj;
      aj["q"] = a.q;
      aj["outcome"] = gapk::to_string(a.outcome);
      aj["forbidden"] = a.forbidden;
      ordered_json forms = ordered_json::array();
      for (const auto& f : a.forms) forms.push_back(f.display());
      aj["residues"] = std::move(forms);
      as.push_back(std::move(aj));
    }
    j["analyses"] = std::move(as);
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "q,outcome,forbidden\n";
    for (const auto& a : cert.analyses) {
      std::cout << a.q << "," << gapk::to_string(a.outcome) << ",";
      bool first = true;
      for (auto v : a.forbidden) {
        if (!first) std::cout << ';';
        std::cout << v;
        first = false;
      }
      std::cout << "\n";
    }
  } else {
    std::cout << "(" << k << ": " << p1.get_str() << ", " << r.get_str() << ", " << cert.label()
              << ")\n";
    std::cout << gapk::certificate_report(cert);
  }
  return cert.impossible ? 1 : 0;
}

int cmd_catalog(const RunConfig& cfg, unsigned k, std::size_t count, const std::string& bound_s,
                const std::string& compare_id, const std::string& fmt, long long offset) {
  gapk::Natural p = gapk::smallest_prime_geq(k);
  gapk::SearchOptions opt{cfg.workers, cfg.rounds, cfg.q_max};
  gapk::DifferenceSequence seq =
      bound_s.empty()
          ? gapk::difference_sequence_count(k, p, p, count, opt)
          : gapk::difference_sequence_bound(k, p, p, gapk::parse_natural_expr(bound_s), opt);

  if (!compare_id.empty()) {
    gapk::ReferenceClient client({cfg.cache_dir, cfg.fixture_dir, cfg.offline});
    gapk::BFile ref = client.fetch(compare_id);
    seq.oeis_id = compare_id;
    gapk::CompareReport rep = gapk::compare(seq, ref);
    for (const auto& e : rep.entries) {
      if (e.status == gapk::EntryStatus::Match) continue;
      std::cout << "index " << e.index << ": ";
      switch (e.status) {
        case gapk::EntryStatus::Mismatch:
          std::cout << "mismatch (computed " << e.computed->get_str() << ", reference "
                    << e.reference->get_str() << ")";
          break;
        case gapk::EntryStatus::Unverified:
          std::cout << "unverified (reference " << e.reference->get_str()
                    << " beyond computed range)";
          break;
        case gapk::EntryStatus::Missing:
          std::cout << "missing from reference (computed " << e.computed->get_str() << ")";
          break;
        default: break;
      }
      std::cout << "\n";
    }
    std::cout << rep.summary() << "\n";
    return rep.all_match() ? 0 : 1;
  }

  if (fmt == "json") {
    std::cout << gapk::to_json(seq);
  } else if (fmt == "csv") {
    std::cout << gapk::to_csv(seq);
  } else {
    std::vector<std::string> comments = {"differences d for GAP-" + std::to_string(k) +
                                         " with p1 = r = " + p.get_str() +
                                         ", exhaustive for d <= " + seq.search_bound.get_str()};
    std::cout << gapk::export_bfile(seq, offset, comments);
  }
  return seq.terms.empty() ? 1 : 0;
}

int cmd_scan_tail(const RunConfig& cfg, const std::string& p1s, const std::string& rs,
                  const std::string& ds, unsigned k, unsigned j_max) {
  gapk::GapTriple t{gapk::parse_natural_expr(p1s), gapk::parse_natural_expr(rs),
                    gapk::parse_integer_expr(ds)};
  gapk::TailScanReport rep = gapk::tail_scan(t, k, j_max, cfg.rounds, cfg.digit_cap);
  if (!rep.base_gap_verified)
    std::cerr << "warning: the defining window j=0.." << k - 1 << " does not verify\n";
  if (cfg.format == "json") {
    ordered_json j;
    j["p1"] = t.p1.get_str();
    j["r"] = t.r.get_str();
    j["d"] = t.d.get_str();
    j["k"] = k;
    j["j_lo"] = rep.j_lo;
    j["j_hi"] = rep.j_hi;
    ordered_json ws = ordered_json::array();
    for (const auto& w : rep.windows) {
      ordered_json wj;
      wj["start_j"] = w.start_j;
      wj["order"] = w.order;
      ws.push_back(std::move(wj));
    }
    j["windows"] = std::move(ws);
    j["max_order_found"] = rep.max_order_found;
    j["truncated"] = rep.truncated;
    j["base_gap_verified"] = rep.base_gap_verified;
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "start_j,order\n";
    for (const auto& w : rep.windows) std::cout << w.start_j << "," << w.order << "\n";
  } else {
    std::cout << "tail scan of p1=" << t.p1.get_str() << " r=" << t.r.get_str()
              << " d=" << t.d.get_str() << ", j in [" << rep.j_lo << ", " << rep.j_hi << "]\n";
    for (const auto& w : rep.windows)
      std::cout << "  prime run at j=" << w.start_j << " of order " << w.order << "\n";
    std::cout << "max order found: " << rep.max_order_found << "\n";
    if (rep.truncated)
      std::cout << "truncated at j=" << *rep.truncated_at_j << " (digit cap " << cfg.digit_cap
                << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  cfg.cache_dir = default_cache_dir();

  CLI::App app{"gapk: primes in geometric-arithmetic progression (p1*r^j + j*d)"};
  app.set_config("--config", "", "config file (key=value lines, flags win)");
  app.add_option("--workers", cfg.workers, "worker threads (0: all cores)");
  app.add_option("--rounds", cfg.rounds, "extra probabilistic rounds above 2^64")
      ->check(CLI::PositiveNumber);
  app.add_option("--digit-cap", cfg.digit_cap, "stop scans past this many digits")
      ->check(CLI::PositiveNumber);
  app.add_option("--q-max", cfg.q_max, "largest modulus in factor certificates")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_flag("--offline", cfg.offline, "never touch the network")->envname("GAPK_OFFLINE");
  app.add_option("--frontier", cfg.frontier_path, "frontier checkpoint file");
  app.add_option("--cache-dir", cfg.cache_dir, "reference b-file cache directory");
  app.add_option("--fixture-dir", cfg.fixture_dir, "read-only b-file fixture directory");
  app.require_subcommand(1);

  // verify
  std::string p1s, rs, ds, dmins, dmaxs, stride = "auto", bound_s, compare_id, cat_fmt = "bfile";
  unsigned k = 2, start_j = 0, j_max = 0;
  bool resume = false;
  std::size_t count = 50;
  long long offset = 1;

  auto* verify = app.add_subcommand("verify", "verify one GAP-k window");
  verify->add_option("--p1", p1s, "start")->required();
  verify->add_option("--r", rs, "ratio")->required();
  verify->add_option("--d", ds, "difference (may be negative)")->required();
  verify->add_option("--k", k, "order")->required();
  verify->add_option("--start-j", start_j, "first index of the window");

  auto* search = app.add_subcommand("search", "scan a d-range for GAP-k differences");
  search->add_option("--p1", p1s, "start")->required();
  search->add_option("--r", rs, "ratio")->required();
  search->add_option("--k", k, "order")->required();
  search->add_option("--d-min", dmins, "range start")->required();
  search->add_option("--d-max", dmaxs, "range end")->required();
  search->add_option("--stride", stride, "step: auto (certificate factor) or a number");
  search->add_option("--start-j", start_j, "first index of each window");

  auto* minimal = app.add_subcommand("minimal", "least difference of the minimal GAP-k");
  minimal->add_option("--k", k, "order")->required();
  minimal->add_option("--d-bound", bound_s, "search bound for d");
  minimal->add_flag("--resume", resume, "resume from the frontier checkpoint");

  auto* factor = app.add_subcommand("factor", "forced common-factor certificate");
  factor->add_option("--k", k, "order")->required();
  factor->add_option("--p1", p1s, "start (default: smallest prime >= k)");
  factor->add_option("--r", rs, "ratio (default: same as p1)");
  factor->add_option("--start-j", start_j, "first index of the window");

  auto* catalog = app.add_subcommand("catalog", "difference sequence of the minimal GAP-k");
  catalog->add_option("--k", k, "order")->required();
  auto* copt = catalog->add_option("--count", count, "number of terms");
  auto* bopt = catalog->add_option("--bound", bound_s, "generate all terms <= bound");
  copt->excludes(bopt);
  catalog->add_option("--compare", compare_id, "diff against a reference sequence id");
  catalog->add_option("--format", cat_fmt, "sequence format")
      ->check(CLI::IsMember({"bfile", "json", "csv"}));
  catalog->add_option("--offset", offset, "b-file start index");

  auto* scan = app.add_subcommand("scan-tail", "scan past the defining window for prime runs");
  scan->add_option("--p1", p1s, "start")->required();
  scan->add_option("--r", rs, "ratio")->required();
  scan->add_option("--d", ds, "difference")->required();
  scan->add_option("--k", k, "order of the defining window")->required();
  scan->add_option("--j-max", j_max, "last index to scan")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(verify)) return cmd_verify(cfg, p1s, rs, ds, k, start_j);
    if (app.got_subcommand(search))
      return cmd_search(cfg, p1s, rs, k, dmins, dmaxs, stride, start_j);
    if (app.got_subcommand(minimal)) {
      if (bound_s.empty()) bound_s = "1000000000";
      if (resume && cfg.frontier_path.empty()) {
        std::cerr << "error: --resume needs --frontier FILE\n";
        return 2;
      }
      return cmd_minimal(cfg, k, bound_s, resume);
    }
    if (app.got_subcommand(factor)) return cmd_factor(cfg, k, p1s, rs, start_j);
    if (app.got_subcommand(catalog))
      return cmd_catalog(cfg, k, count, bound_s, compare_id, cat_fmt, offset);
    if (app.got_subcommand(scan)) return cmd_scan_tail(cfg, p1s, rs, ds, k, j_max);
  } catch (const gapk::ExprError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
