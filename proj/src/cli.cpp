#include "bubbles/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "bubbles/closed_forms.hpp"
#include "bubbles/exact_enum.hpp"
#include "bubbles/montecarlo.hpp"
#include "bubbles/series.hpp"
#include "bubbles/table_io.hpp"

namespace bubbles {

namespace {

namespace fs = std::filesystem;

constexpr const char* kCacheVersion = "v1";
constexpr const char* kCacheEnv = "BUBBLES_CACHE_DIR";
constexpr unsigned kDefaultBruteLimit = 7;
constexpr unsigned kSlowBruteLimit = 10;

// Reference values of B(n,p) for n = 1..6.
const std::vector<std::vector<unsigned long>> kReferenceRows = {
    {0, 0},
    {2, 0, 0, 1},
    {8, 4, 2, 2, 0, 5},
    {42, 30, 20, 15, 12, 10, 0, 36},
    {300, 240, 186, 147, 120, 99, 82, 72, 0, 329},
    {2730, 2310, 1920, 1605, 1356, 1155, 988, 848, 730, 658, 0, 3655},
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CacheOptions {
  std::string dir;
  bool use_cache = false;
};

std::string resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kCacheEnv)) return env;
  return {};
}

fs::path cache_file(const std::string& dir, unsigned n_max, const char* kind) {
  return fs::path(dir) / fmt::format("bruteforce-n{}-{}.{}.csv", n_max, kCacheVersion, kind);
}

BruteForceTables brute_tables(unsigned n_max, unsigned threads, const CacheOptions& cache) {
  const std::string dir = resolve_cache_dir(cache.dir);
  if (!dir.empty() && cache.use_cache) {
    std::ifstream bin(cache_file(dir, n_max, "bubbles"));
    std::ifstream sin(cache_file(dir, n_max, "shortchords"));
    if (bin && sin) return {read_bubble_table_csv(bin), read_short_chord_table_csv(sin)};
  }
  BruteForceTables t = bruteforce_tables(n_max, threads, EnumerationLimit{kSlowBruteLimit});
  if (!dir.empty()) {
    fs::create_directories(dir);
    std::ofstream bout(cache_file(dir, n_max, "bubbles"));
    write_csv(bout, t.bubbles);
    std::ofstream sout(cache_file(dir, n_max, "shortchords"));
    write_csv(sout, t.short_chords);
  }
  return t;
}

void require_brute_range(unsigned n_max, bool allow_slow, const char* flag) {
  const unsigned limit = allow_slow ? kSlowBruteLimit : kDefaultBruteLimit;
  if (n_max < 1) throw UsageError(fmt::format("{} must be at least 1", flag));
  if (n_max > limit) {
    throw UsageError(fmt::format("{} = {} exceeds the brute-force limit {}{}", flag, n_max, limit,
                                 allow_slow ? "" : " (use --allow-slow for up to 10)"));
  }
}

// Writes to the file at `path`, or to `fallback` when the path is empty.
template <class Emit>
void emit_to(const std::string& path, std::ostream& fallback, Emit&& emit) {
  if (path.empty()) {
    emit(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  emit(file);
  if (!file) throw std::runtime_error("failed writing " + path);
}

// ---- table -----------------------------------------------------------------

struct TableArgs {
  unsigned n_max = 0;
  std::string route = "brute";
  std::string format = "csv";
  std::string out_path;
  unsigned threads = 0;
  bool allow_slow = false;
  CacheOptions cache;
};

BubbleTable table_by_route(const std::string& route, unsigned n_max, unsigned threads, const CacheOptions& cache) {
  if (route == "brute") return brute_tables(n_max, threads, cache).bubbles;
  if (route == "series-closed") return bubble_table_from_series(bubble_gf_closed_form(n_max + 1), n_max);
  return bubble_table_from_series(bubble_gf_inclusion_exclusion(n_max + 1), n_max);
}

int cmd_table(const TableArgs& a, std::ostream& out) {
  if (a.n_max < 1) throw UsageError("--n-max must be at least 1");
  if (a.route == "brute") require_brute_range(a.n_max, a.allow_slow, "--n-max");
  const BubbleTable t = table_by_route(a.route, a.n_max, a.threads, a.cache);
  emit_to(a.out_path, out, [&](std::ostream& o) {
    if (a.format == "json") {
      write_json(o, t);
    } else if (a.format == "plain") {
      write_plain(o, t);
    } else {
      write_csv(o, t);
    }
  });
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  unsigned n_max_brute = kDefaultBruteLimit;
  unsigned n_max_series = 10;
  std::string a367000;
  std::string a278990;
  std::string a079267;
  std::string format = "plain";
  unsigned threads = 0;
  bool allow_slow = false;
  CacheOptions cache;
};

enum class Status { Pass, Fail, Skip };

struct Check {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

class Report {
 public:
  void add(std::string name, bool pass, std::string detail) {
    checks_.push_back({std::move(name), pass ? Status::Pass : Status::Fail, std::move(detail)});
  }
  void skip(std::string name, std::string detail) {
    checks_.push_back({std::move(name), Status::Skip, std::move(detail)});
  }
  bool all_passed() const {
    return std::none_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.status == Status::Fail; });
  }

  void print(std::ostream& out, const std::string& format) const {
    std::size_t failed = 0;
    std::size_t skipped = 0;
    for (const auto& c : checks_) {
      failed += c.status == Status::Fail;
      skipped += c.status == Status::Skip;
    }
    if (format == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& c : checks_) {
        const char* s = c.status == Status::Pass ? "pass" : c.status == Status::Fail ? "fail" : "skip";
        j.push_back({{"name", c.name}, {"status", s}, {"detail", c.detail}});
      }
      out << nlohmann::json{{"checks", j}, {"failed", failed}, {"passed", all_passed()}}.dump(2) << '\n';
      return;
    }
    for (const auto& c : checks_) {
      const char* s = c.status == Status::Pass ? "PASS" : c.status == Status::Fail ? "FAIL" : "SKIP";
      out << s << ' ' << c.name << ": " << c.detail << '\n';
    }
    out << fmt::format("summary: {} checks, {} failed, {} skipped\n", checks_.size(), failed, skipped);
  }

 private:
  std::vector<Check> checks_;
};

// First differing entry between two tables over rows 1..n_max, if any.
std::optional<std::string> first_difference(const BubbleTable& a, const BubbleTable& b, unsigned n_max) {
  for (unsigned n = 1; n <= n_max; ++n) {
    for (unsigned p = 1; p <= 2 * n; ++p) {
      if (a.at(n, p) != b.at(n, p)) {
        return fmt::format("B({},{}) differs: {} vs {}", n, p, a.at(n, p).get_str(), b.at(n, p).get_str());
      }
    }
  }
  return std::nullopt;
}

void compare_tables(Report& r, const std::string& name, const BubbleTable& a, const BubbleTable& b, unsigned n_max) {
  const auto diff = first_difference(a, b, n_max);
  r.add(name, !diff, diff ? *diff : fmt::format("identical for n <= {}", n_max));
}

template <class Closed, class FromRow>
void check_closed_form(Report& r, const std::string& name, const std::vector<const BubbleTable*>& tables,
                       Closed closed, FromRow from_row) {
  std::optional<std::string> failure;
  unsigned highest = 0;
  for (const BubbleTable* t : tables) {
    for (unsigned n = 2; n <= t->max_n(); ++n) {
      const auto expect = closed(n);
      const auto got = from_row(*t, n);
      highest = std::max(highest, n);
      if (expect != got && !failure) {
        std::ostringstream ss;
        ss << "n = " << n << ": closed form " << expect << ", table " << got;
        failure = ss.str();
      }
    }
  }
  r.add(name, !failure, failure ? *failure : fmt::format("exact for 2 <= n <= {}", highest));
}

void check_bfile(Report& r, OeisSequence seq, const std::string& path, const std::vector<BigInt>& terms) {
  const std::string name = "bfile-" + sequence_name(seq);
  if (path.empty()) {
    r.skip(name, "no b-file given");
    return;
  }
  const BFileComparison c = compare_bfile(read_bfile(path), terms, sequence_offset(seq));
  if (c.compared == 0) {
    r.add(name, false, "no b-file entries overlap the computed range");
  } else if (!c.mismatches.empty()) {
    r.add(name, false, fmt::format("{} of {} entries mismatch; first: {}", c.mismatches.size(), c.compared,
                                   c.mismatches.front()));
  } else {
    r.add(name, true, fmt::format("{} entries match ({} outside computed range)", c.compared, c.skipped));
  }
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  require_brute_range(a.n_max_brute, a.allow_slow, "--n-max-brute");
  if (a.n_max_series < 1) throw UsageError("--n-max-series must be at least 1");
  const unsigned nb = a.n_max_brute;
  const unsigned ns = a.n_max_series;
  const unsigned n_all = std::max(nb, ns);

  const BruteForceTables brute = brute_tables(nb, a.threads, a.cache);
  const BubbleTable closed = bubble_table_from_series(bubble_gf_closed_form(n_all + 1), n_all);
  const BubbleTable incexc = bubble_table_from_series(bubble_gf_inclusion_exclusion(n_all + 1), n_all);

  Report r;
  {
    const unsigned rows = std::min<unsigned>(nb, kReferenceRows.size());
    BubbleTable ref;
    for (unsigned n = 1; n <= rows; ++n) {
      std::vector<BigInt> row;
      for (unsigned long v : kReferenceRows[n - 1]) row.emplace_back(v);
      ref.set_row(n, std::move(row));
    }
    compare_tables(r, "reference-table-brute", brute.bubbles, ref, rows);
  }
  compare_tables(r, "brute-vs-series-closed", brute.bubbles, closed, nb);
  compare_tables(r, "brute-vs-series-incexc", brute.bubbles, incexc, nb);
  compare_tables(r, "series-closed-vs-series-incexc", closed, incexc, ns);

  const BubbleTable closed_ns = closed.truncated(ns);
  const std::vector<const BubbleTable*> tables{&brute.bubbles, &closed_ns};
  check_closed_form(r, "total-bubbles", tables, total_bubbles,
                    [](const BubbleTable& t, unsigned n) { return row_sum(t, n); });
  check_closed_form(r, "first-moment", tables, first_moment,
                    [](const BubbleTable& t, unsigned n) { return row_first_moment(t, n); });
  check_closed_form(r, "mean-bubble-size", tables, mean_bubble_size, [](const BubbleTable& t, unsigned n) {
    return make_rational(row_first_moment(t, n), row_sum(t, n));
  });

  {
    std::vector<std::string> names;
    std::vector<std::optional<std::string>> failures;
    for (const auto& c : check_boundary_relations(brute.bubbles, brute.short_chords)) {
      auto it = std::find(names.begin(), names.end(), c.relation);
      if (it == names.end()) {
        names.push_back(c.relation);
        failures.emplace_back();
        it = names.end() - 1;
      }
      auto& f = failures[static_cast<std::size_t>(it - names.begin())];
      if (!c.pass && !f) f = fmt::format("n = {}: {} vs {}", c.n, c.lhs.get_str(), c.rhs.get_str());
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      r.add("boundary " + names[i], !failures[i],
            failures[i] ? *failures[i] : fmt::format("holds for every applicable n <= {}", nb));
    }
  }

  {
    std::optional<std::string> failure;
    for (unsigned n = 1; n <= n_all && !failure; ++n) {
      const BigInt ie = dn0_by_inclusion_exclusion(n);
      if (n <= nb && ie != brute.short_chords.at(n, 0)) {
        failure = fmt::format("n = {}: inclusion-exclusion {} vs enumeration {}", n, ie.get_str(),
                              brute.short_chords.at(n, 0).get_str());
      } else if (ie != incexc.at(n, 2 * n)) {
        failure = fmt::format("n = {}: inclusion-exclusion {} vs series {}", n, ie.get_str(),
                              incexc.at(n, 2 * n).get_str());
      }
    }
    r.add("dn0-inclusion-exclusion", !failure,
          failure ? *failure : fmt::format("matches enumeration for n <= {} and series for n <= {}", nb, n_all));
  }

  {
    std::optional<std::string> failure;
    for (const auto& [n, row] : brute.short_chords.rows()) {
      BigInt mass = 0;
      BigInt weighted = 0;
      for (std::size_t s = 0; s < row.size(); ++s) {
        mass += row[s];
        weighted += row[s] * static_cast<unsigned long>(s);
      }
      const BigInt total = diagram_count(n);
      if ((mass != total || weighted != total) && !failure) {
        failure = fmt::format("n = {}: mass {}, short chords {}, expected {}", n, mass.get_str(),
                              weighted.get_str(), total.get_str());
      }
    }
    r.add("short-chord-mass", !failure,
          failure ? *failure : fmt::format("sum d(n,s) = sum s d(n,s) = (2n-1)!! for n <= {}", nb));
  }

  check_bfile(r, OeisSequence::A367000, a.a367000,
              sequence_terms(OeisSequence::A367000, closed, brute.short_chords));
  {
    std::vector<BigInt> dn0{BigInt(1)};
    for (unsigned n = 1; n <= n_all; ++n) dn0.push_back(incexc.at(n, 2 * n));
    check_bfile(r, OeisSequence::A278990, a.a278990, dn0);
  }
  check_bfile(r, OeisSequence::A079267, a.a079267,
              sequence_terms(OeisSequence::A079267, brute.bubbles, brute.short_chords));

  r.print(out, a.format);
  return r.all_passed() ? kExitOk : kExitFailure;
}

// ---- closed ----------------------------------------------------------------

struct ClosedArgs {
  unsigned n = 0;
  bool asymptotic = false;
  bool rho_table = false;
  unsigned points = 10;
};

int cmd_closed(const ClosedArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n == 0 && !a.asymptotic && !a.rho_table) throw UsageError("give --n, --asymptotic or --rho");
  if (a.rho_table && a.points == 0) throw UsageError("--points must be at least 1");
  bool domain_failure = false;
  auto guarded = [&](const char* label, auto&& compute) {
    try {
      out << label << " = " << compute() << '\n';
    } catch (const DomainError& e) {
      err << label << ": domain error: " << e.what() << '\n';
      domain_failure = true;
    }
  };

  if (a.n != 0) {
    const unsigned n = a.n;
    out << "n = " << n << '\n';
    guarded("total_bubbles", [&] { return total_bubbles(n).get_str(); });
    guarded("first_moment", [&] { return first_moment(n).get_str(); });
    guarded("mean_bubble_size", [&] {
      const ExactRational m = mean_bubble_size(n);
      return fmt::format("{} ({:.10f})", to_string(m), m.get_d());
    });
    guarded("heuristic_total_bubbles", [&] { return heuristic_total_bubbles(n).get_str(); });
    guarded("bubbles_per_diagram", [&] { return fmt::format("{:.10f}", poisson_bubble_count_estimate(n)); });
  }
  if (a.asymptotic) {
    const AsymptoticDensity density;
    out << fmt::format("asymptotic_trimmed_mean = {:.10f}\n", asymptotic_trimmed_mean());
    out << fmt::format("rho(0+) = {:.10f}\n", density.at_zero());
    out << fmt::format("rho(2) = {:.10f}\n", rho(2.0));
    out << fmt::format("short_chord_free_fraction = {:.10f}\n", std::exp(-1.0));
  }
  if (a.rho_table) {
    out << "x,rho\n";
    for (unsigned k = 1; k <= a.points; ++k) {
      const double x = 2.0 * k / a.points;
      out << fmt::format("{:.6f},{:.10f}\n", x, rho(x));
    }
  }
  return domain_failure ? kExitFailure : kExitOk;
}

// ---- sample ----------------------------------------------------------------

struct SampleArgs {
  unsigned n = 0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned bins = 40;
  std::string out_path;
  bool plot_data = false;
  unsigned threads = 0;
};

int cmd_sample(const SampleArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n < 3) throw UsageError("--n must be at least 3");
  if (a.samples == 0) throw UsageError("--samples must be at least 1");
  if (a.bins == 0) throw UsageError("--bins must be at least 1");
  const Histogram h = sample_histogram(a.n, a.samples, a.seed, a.bins, a.threads);
  const DensityComparison c = compare_to_density(h);
  emit_to(a.out_path, out, [&](std::ostream& o) {
    if (a.plot_data) {
      write_plot_data(o, c);
    } else {
      write_density_csv(o, c);
    }
  });
  std::ostream& summary = a.out_path.empty() ? err : out;
  fmt::print(summary, "n = {}, samples = {}, seed = {}, bins = {}\n", a.n, a.samples, a.seed, a.bins);
  fmt::print(summary, "sup_norm = {:.6f}\n", c.sup_norm);
  fmt::print(summary, "trimmed_mean = {:.6f} (large-n prediction {:.6f})\n", c.trimmed_mean,
             c.trimmed_mean_target);
  fmt::print(summary, "short_chord_free_fraction = {:.6f} (e^-1 = {:.6f})\n", c.short_chord_free_fraction,
             std::exp(-1.0));
  fmt::print(summary, "mean_short_chords = {:.6f}\n", c.mean_short_chords);
  fmt::print(summary, "nested_short_chord_fraction = {:.6f}\n", c.nested_short_chord_fraction);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and asymptotic enumeration of bubbles in linear chord diagrams"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("bubbles ") + kCacheVersion);

  const std::vector<std::string> routes{"brute", "series-closed", "series-incexc"};

  TableArgs table;
  auto* table_cmd = app.add_subcommand("table", "Compute the triangle B(n,p) for n = 1..n-max");
  table_cmd->add_option("--n-max", table.n_max, "Largest chord count")->required();
  table_cmd->add_option("--route", table.route, "brute | series-closed | series-incexc")
      ->check(CLI::IsMember(routes));
  table_cmd->add_option("--format", table.format, "csv | json | plain")->check(CLI::IsMember({"csv", "json", "plain"}));
  table_cmd->add_option("--out", table.out_path, "Write the table here instead of stdout");
  table_cmd->add_option("--threads", table.threads, "Worker cap (0 = all cores)");
  table_cmd->add_flag("--allow-slow", table.allow_slow, "Permit brute force up to n = 10");
  table_cmd->add_option("--cache-dir", table.cache.dir, std::string("Cache directory (default $") + kCacheEnv + ")");
  table_cmd->add_flag("--use-cache", table.cache.use_cache, "Reuse cached brute-force tables");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check every route, closed form and b-file");
  verify_cmd->footer(
      "b-files are OEIS plain text, one 'index value' pair per line, '#' comments ignored.\n"
      "A367000 is read row-major over B(n,p): index 1 is B(1,1), rows n = 1, 2, ... with p = 1..2n.\n"
      "A278990 index n is d(n,0), starting at n = 0.\n"
      "A079267 is read row-major over d(n,s): index 0 is d(0,0), rows n = 0, 1, ... with s = 0..n.");
  verify_cmd->add_option("--n-max-brute", verify.n_max_brute, "Brute-force ceiling");
  verify_cmd->add_option("--n-max-series", verify.n_max_series, "Series ceiling");
  verify_cmd->add_option("--a367000", verify.a367000, "b-file for B(n,p)");
  verify_cmd->add_option("--a278990", verify.a278990, "b-file for d(n,0)");
  verify_cmd->add_option("--a079267", verify.a079267, "b-file for d(n,s)");
  verify_cmd->add_option("--format", verify.format, "plain | json")->check(CLI::IsMember({"plain", "json"}));
  verify_cmd->add_option("--threads", verify.threads, "Worker cap (0 = all cores)");
  verify_cmd->add_flag("--allow-slow", verify.allow_slow, "Permit brute force up to n = 10");
  verify_cmd->add_option("--cache-dir", verify.cache.dir, std::string("Cache directory (default $") + kCacheEnv + ")");
  verify_cmd->add_flag("--use-cache", verify.cache.use_cache, "Reuse cached brute-force tables");

  ClosedArgs closed;
  auto* closed_cmd = app.add_subcommand("closed", "Evaluate exact and asymptotic closed forms");
  closed_cmd->add_option("--n", closed.n, "Chord count for totals, moments and mean");
  closed_cmd->add_flag("--asymptotic", closed.asymptotic, "Print large-n constants");
  closed_cmd->add_flag("--rho", closed.rho_table, "Print the limiting density on a grid");
  closed_cmd->add_option("--points", closed.points, "Grid points x = 2k/points, k = 1..points");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo bubble-size histogram against rho(x)");
  sample_cmd->add_option("--n", sample.n, "Chord count (>= 3)")->required();
  sample_cmd->add_option("--samples", sample.samples, "Number of diagrams");
  sample_cmd->add_option("--seed", sample.seed, "RNG seed");
  sample_cmd->add_option("--bins", sample.bins, "Histogram bins over (0, 2]");
  sample_cmd->add_option("--out", sample.out_path, "CSV output path (default stdout)");
  sample_cmd->add_flag("--plot-data", sample.plot_data, "Emit two-column gnuplot data instead of CSV");
  sample_cmd->add_option("--threads", sample.threads, "Worker cap (0 = all cores)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*table_cmd) return cmd_table(table, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*closed_cmd) return cmd_closed(closed, out, err);
    if (*sample_cmd) return cmd_sample(sample, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace bubbles
