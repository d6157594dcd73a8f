#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "checks.hpp"
#include "waring/correlation.hpp"
#include "waring/counting.hpp"
#include "waring/digitcore.hpp"
#include "waring/errors.hpp"
#include "waring/expsums.hpp"
#include "waring/parallel.hpp"
#include "waring/rational.hpp"
#include "waring/report.hpp"

namespace waring::cli {

namespace {

using nlohmann::ordered_json;

enum class Command { Corr, Identity, Moments, Count, Ratio, Weylscan, Verify };

struct RunConfig {
  Command command = Command::Verify;
  std::string command_name;
  std::uint64_t n = 3;
  std::uint64_t k = 2;
  std::uint64_t N = 0;
  std::uint64_t from = 0, to = 0;
  std::uint64_t P = 0;
  std::uint64_t H = 0;
  std::uint64_t X = 0;
  std::uint64_t t = 0;
  std::uint64_t q_max = 0;
  std::uint64_t s = 2;
  std::optional<std::uint64_t> l, m;
  std::string pattern;
  std::string level = "quick";
  unsigned threads = 1;
  std::uint64_t seed = 1;
  ReportFormat format = ReportFormat::Csv;
  std::string out;
  std::string cache_dir;
};

// Raised when a command completes but a MUST-level check failed; the report
// has already been written.
struct CheckFailure {
  std::string operation;
  std::string message;
};

ConvolutionOptions conv(const RunConfig& c) {
  ConvolutionOptions o{ConvolutionStrategy::Auto, c.threads, {}};
  o.cache_dir = c.cache_dir;
  return o;
}

unsigned narrow(std::uint64_t v, const char* flag) {
  if (v > 1000000) throw std::invalid_argument(std::string(flag) + " is out of range");
  return static_cast<unsigned>(v);
}

void require_positive(std::uint64_t v, const char* flag) {
  if (v == 0) throw std::invalid_argument(std::string(flag) + " must be >= 1");
}

void emit(const RunConfig& c, const Report& report, std::ostream& out) {
  if (c.out.empty()) {
    out << emit_report(report, c.format);
  } else {
    write_report(report, c.format, c.out);
  }
}

void emit_text(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + c.out + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write to " + c.out + " failed");
}

Field meta_int(const std::string& name, std::uint64_t v) {
  return {name, ColumnType::Integer, static_cast<std::int64_t>(v)};
}

// ---- commands -----------------------------------------------------------

void run_corr(const RunConfig& c, std::ostream& out) {
  require_positive(c.X, "--X");
  require_positive(c.H, "--H");
  const auto audit = bound_audit(c.X, c.H, c.threads);
  Report r;
  r.kind = "correlation_audit";
  r.metadata = {meta_int("X", c.X),
                meta_int("H", c.H),
                {"total", ColumnType::Exact, audit.total},
                {"mu", ColumnType::Real, audit.mu},
                {"ratio", ColumnType::Real, audit.ratio},
                {"outside_regime", ColumnType::Boolean, audit.outside_regime}};
  r.columns = {{"h", ColumnType::Integer},
               {"S", ColumnType::Integer},
               {"V", ColumnType::Integer},
               {"kappa12_h1", ColumnType::Integer},
               {"alpha_bound", ColumnType::Real}};
  for (const auto& row : audit.rows)
    r.add_row({static_cast<std::int64_t>(row.h), row.s, row.v, static_cast<std::int64_t>(row.kappa12_h1),
               row.alpha_bound});
  emit(c, r, out);
}

void run_identity(const RunConfig& c, std::ostream& out) {
  if (c.t < 1 || c.t > 20) throw std::invalid_argument("--t must be in [1, 20]");
  const auto t = static_cast<unsigned>(c.t);
  const auto sum = identity_sum(t);
  const auto expected = pow(Rational(7, 2), t);
  const bool pass = sum == expected;
  if (c.format == ReportFormat::Json) {
    ordered_json j;
    j["t"] = t;
    j["sum"] = sum.to_string();
    j["expected"] = expected.to_string();
    j["pass"] = pass;
    emit_text(c, j.dump() + "\n", out);
  } else {
    Report r;
    r.kind = "identity";
    r.columns = {{"t", ColumnType::Integer},
                 {"sum", ColumnType::Text},
                 {"expected", ColumnType::Text},
                 {"pass", ColumnType::Boolean}};
    r.add_row({static_cast<std::int64_t>(t), sum.to_string(), expected.to_string(), pass});
    emit(c, r, out);
  }
  if (!pass) throw CheckFailure{"identity_sum", "sum " + sum.to_string() + " != " + expected.to_string()};
}

std::vector<Cell> moment_row(const MomentReport& m) {
  return {static_cast<std::int64_t>(m.P), static_cast<std::int64_t>(m.n),
          static_cast<std::int64_t>(m.w_exponent), static_cast<std::int64_t>(m.s_exponent),
          m.value, m.reference_bound, m.bound_kind};
}

void run_moments(const RunConfig& c, std::ostream& out) {
  require_positive(c.P, "--P");
  require_positive(c.n, "--n");
  const auto n = narrow(c.n, "--n");
  Report r;
  r.kind = "moments";
  r.columns = {{"P", ColumnType::Integer},          {"n", ColumnType::Integer},
               {"w_exponent", ColumnType::Integer}, {"s_exponent", ColumnType::Integer},
               {"value", ColumnType::Exact},        {"reference_bound", ColumnType::Real},
               {"bound_kind", ColumnType::Text}};
  std::optional<CheckFailure> failure;
  if (c.l || c.m) {
    const auto l = narrow(c.l.value_or(0), "--l");
    const auto m = narrow(c.m.value_or(0), "--m");
    if (l + m == 0) throw std::invalid_argument("--l + --m must be >= 1");
    const auto mixed = mixed_moment(c.P, n, l, m, conv(c));
    const auto pure = moment_S(c.P, n, l + m, conv(c));
    const auto dom = domination_check(c.P, n, l, m, conv(c));
    r.metadata = {{"pointwise_domination", ColumnType::Boolean, dom.pointwise},
                  {"summed_domination", ColumnType::Boolean, dom.summed}};
    r.add_row(moment_row(mixed));
    r.add_row(moment_row(pure));
    if (!dom.pointwise || !dom.summed)
      failure = CheckFailure{"domination_check", "mixed moment " + to_string(dom.mixed) +
                                                     " not dominated by " + to_string(dom.pure)};
  } else {
    require_positive(c.s, "--s");
    r.add_row(moment_row(moment_S(c.P, n, narrow(c.s, "--s"), conv(c))));
  }
  emit(c, r, out);
  if (failure) throw *failure;
}

void run_count(const RunConfig& c, std::ostream& out) {
  require_positive(c.n, "--n");
  require_positive(c.k, "--k");
  const auto k = narrow(c.k, "--k");
  Pattern pattern;
  if (!c.pattern.empty()) pattern = parse_pattern(c.pattern, k);
  const auto res = count_representations(c.N, narrow(c.n, "--n"), k, pattern, conv(c));
  Report r;
  r.kind = "representation_count";
  r.columns = {{"N", ColumnType::Integer},
               {"n", ColumnType::Integer},
               {"k", ColumnType::Integer},
               {"pattern", ColumnType::Text},
               {"count", ColumnType::Exact}};
  r.add_row({static_cast<std::int64_t>(res.N), static_cast<std::int64_t>(res.n),
             static_cast<std::int64_t>(res.k), pattern_string(res.pattern), res.count});
  emit(c, r, out);
}

void run_ratio(const RunConfig& c, std::ostream& out) {
  require_positive(c.n, "--n");
  const auto rep =
      theorem_ratio_report(narrow(c.n, "--n"), narrow(c.k, "--k"), c.from, c.to, conv(c));
  Report r;
  r.kind = "theorem_ratio";
  r.metadata = {meta_int("n", rep.n),
                meta_int("k", rep.k),
                meta_int("from", rep.from),
                meta_int("to", rep.to),
                meta_int("P", rep.P),
                {"k0", ColumnType::Integer, rep.k0 ? static_cast<std::int64_t>(*rep.k0) : std::int64_t{-1}},
                {"k_at_least_k0", ColumnType::Boolean, rep.k_at_least_k0},
                meta_int("ratio_count", rep.ratio_count),
                {"mean", ColumnType::Real, rep.mean},
                {"stddev", ColumnType::Real, rep.stddev}};
  r.columns = {{"N", ColumnType::Integer},
               {"I", ColumnType::Exact},
               {"J", ColumnType::Exact},
               {"ratio", ColumnType::Real}};
  for (const auto& row : rep.rows)
    r.add_row({static_cast<std::int64_t>(row.N), row.I, row.J, row.ratio.value_or(std::nan(""))});
  emit(c, r, out);
}

void run_weylscan(const RunConfig& c, std::ostream& out) {
  require_positive(c.n, "--n");
  const auto start = std::chrono::steady_clock::now();
  const auto scan = sup_scan(c.P, narrow(c.n, "--n"), c.q_max, c.threads);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Report r;
  r.kind = "sup_scan";
  r.metadata = {meta_int("P", c.P),
                meta_int("n", c.n),
                meta_int("q_max", c.q_max),
                {"max_ratio", ColumnType::Real, scan.max_ratio},
                {"exponent", ColumnType::Real, scan.exponent},
                {"wall_time_s", ColumnType::Real, wall}};
  r.columns = {{"alpha_num", ColumnType::Integer}, {"alpha_den", ColumnType::Integer},
               {"P", ColumnType::Integer},         {"n", ColumnType::Integer},
               {"abs_S", ColumnType::Real},        {"abs_W", ColumnType::Real},
               {"ratio", ColumnType::Real}};
  for (const auto& row : scan.rows)
    r.add_row({static_cast<std::int64_t>(row.a), static_cast<std::int64_t>(row.q),
               static_cast<std::int64_t>(c.P), static_cast<std::int64_t>(c.n), row.abs_s, row.abs_w,
               row.ratio});
  emit(c, r, out);
}

std::vector<checks::CheckResult> verify_suite(const RunConfig& c) {
  // One engine per check so adding a check never shifts another's samples.
  auto engine = [&](std::uint64_t index) { return std::mt19937_64(c.seed * 0x9E3779B97F4A7C15ULL + index); };
  const bool full = c.level == "full";
  std::vector<checks::CheckResult> out;
  auto g = engine(1);
  auto p = engine(2);
  out.push_back(checks::identity_suite(full ? 20 : 6));
  out.push_back(checks::gauss_orthogonality(100, 2, 10, 3, g, 1e-6));
  out.push_back(checks::partition_checks(full ? 50 : 20, 5000, 4, p, c.threads));
  if (!full) return out;

  auto rr = engine(3);
  auto dft = engine(4);
  auto dir = engine(5);
  auto vdc = engine(6);
  out.push_back(checks::progression_identity(12, 64, c.threads));
  out.push_back(checks::recursion_residuals({1 << 10, 1 << 14, 1 << 16}, 500, rr));
  out.push_back(checks::coefficient_bounds(1 << 14));
  out.push_back(checks::moment_oracle(12, {3, 4, 5}, 3, c.threads));
  out.push_back(checks::domination(64, 3, 3, c.threads));
  out.push_back(checks::dft_bridge(50, 5000, 4, dft));
  out.push_back(checks::correlation_slope(1 << 16, 4, 256, 0.05, c.threads).check);
  out.push_back(checks::dirichlet_approximations(2000, dir));
  out.push_back(checks::van_der_corput(100, 1024, vdc));
  out.push_back(checks::farey_scan(1 << 10, 3, 64, c.threads));
  for (std::uint64_t centre : {10000, 50000, 100000})
    out.push_back(checks::ratio_observation(checks::ratio_window(3, 8, centre, centre + 1000, c.threads), 3, 8));
  return out;
}

void run_verify(const RunConfig& c, std::ostream& out) {
  const auto results = verify_suite(c);
  std::uint64_t must_failures = 0;
  std::string first;
  for (const auto& r : results)
    if (r.must && !r.pass()) {
      if (must_failures++ == 0) first = r.name + ": " + r.detail;
    }
  Report rep;
  rep.kind = "verify";
  rep.metadata = {{"level", ColumnType::Text, c.level},
                  meta_int("seed", c.seed),
                  {"passed", ColumnType::Boolean, must_failures == 0},
                  meta_int("failed_checks", must_failures)};
  rep.columns = {{"check", ColumnType::Text},    {"scope", ColumnType::Text},
                 {"cases", ColumnType::Integer}, {"failures", ColumnType::Integer},
                 {"must", ColumnType::Boolean},  {"pass", ColumnType::Boolean},
                 {"detail", ColumnType::Text}};
  for (const auto& r : results)
    rep.add_row({r.name, r.scope, static_cast<std::int64_t>(r.cases), static_cast<std::int64_t>(r.failures),
                 r.must, r.pass(), r.detail});
  emit(c, rep, out);
  if (must_failures > 0) throw CheckFailure{"verify", first};
}

// ---- failure records ----------------------------------------------------

ordered_json inputs_of(const CLI::App* sub) {
  ordered_json inputs = ordered_json::object();
  if (sub == nullptr) return inputs;
  for (const auto* parent = sub; parent != nullptr; parent = parent->get_parent())
    for (const auto* opt : parent->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      const auto& res = opt->results();
      inputs[opt->get_name()] = res.size() == 1 ? ordered_json(res.front()) : ordered_json(res);
    }
  return inputs;
}

void failure_record(std::ostream& err, int code, const std::string& kind, const std::string& operation,
                    const CLI::App* sub, const std::string& message) {
  ordered_json j;
  j["status"] = "failure";
  j["exit_code"] = code;
  j["kind"] = kind;
  j["operation"] = operation;
  j["inputs"] = inputs_of(sub);
  j["message"] = message;
  err << j.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  c.threads = default_thread_count();

  CLI::App app{"Exact Waring counts, Thue-Morse correlations and Weyl sums", "waring"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "csv";
  app.add_option("--threads", c.threads, "worker threads (default: WARING_THREADS or all cores)")
      ->check(CLI::Range(1U, 1024U));
  app.add_option("--seed", c.seed, "seed for randomized probe selection");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.out, "output file (default: stdout)");
  app.add_option("--cache", c.cache_dir, "directory for cached base vectors");

  auto* corr = app.add_subcommand("corr", "per-h correlation audit for h <= H");
  corr->add_option("--X", c.X, "summation length")->required();
  corr->add_option("--H", c.H, "largest shift")->required();

  auto* identity = app.add_subcommand("identity", "exact kappa identity for one t");
  identity->add_option("--t", c.t, "number of base-4 digits")->required();

  auto* moments = app.add_subcommand("moments", "moment of |S|, or mixed moment with --l/--m");
  moments->add_option("--P", c.P)->required();
  moments->add_option("--n", c.n);
  moments->add_option("--s", c.s, "half the power of |S|");
  moments->add_option("--l", c.l, "half the power of |W|");
  moments->add_option("--m", c.m, "half the power of |S| in the mixed moment");

  auto* count = app.add_subcommand("count", "ordered representations of N as k n-th powers");
  count->add_option("--N", c.N)->required();
  count->add_option("--n", c.n);
  count->add_option("--k", c.k);
  count->add_option("--pattern", c.pattern, "class per variable, e.g. 0110");

  auto* ratio = app.add_subcommand("ratio", "I 2^k / J over a window of N");
  ratio->add_option("--n", c.n);
  ratio->add_option("--k", c.k)->required();
  ratio->add_option("--from", c.from)->required();
  ratio->add_option("--to", c.to)->required();

  auto* weylscan = app.add_subcommand("weylscan", "|W(a/q)|/P over Farey fractions");
  weylscan->add_option("--P", c.P)->required();
  weylscan->add_option("--n", c.n);
  weylscan->add_option("--q-max", c.q_max)->required();

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--level", c.level)->check(CLI::IsMember({"quick", "full"}));

  const CLI::App* sub = nullptr;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    failure_record(err, kExitUsage, "usage", subs.empty() ? "parse" : subs.front()->get_name(),
                   subs.empty() ? &app : subs.front(), e.what());
    return kExitUsage;
  }

  sub = app.get_subcommands().front();
  c.command_name = sub->get_name();
  c.format = format == "json" ? ReportFormat::Json : ReportFormat::Csv;
  try {
    if (sub == corr) run_corr(c, out);
    else if (sub == identity) run_identity(c, out);
    else if (sub == moments) run_moments(c, out);
    else if (sub == count) run_count(c, out);
    else if (sub == ratio) run_ratio(c, out);
    else if (sub == weylscan) run_weylscan(c, out);
    else run_verify(c, out);
  } catch (const CheckFailure& f) {
    failure_record(err, kExitInvariant, "invariant", f.operation, sub, f.message);
    return kExitInvariant;
  } catch (const InvariantViolation& e) {
    failure_record(err, kExitInvariant, "invariant", c.command_name, sub, e.what());
    return kExitInvariant;
  } catch (const ResourceLimit& e) {
    failure_record(err, kExitResource, "resource", c.command_name, sub, e.what());
    return kExitResource;
  } catch (const std::overflow_error& e) {
    failure_record(err, kExitResource, "resource", c.command_name, sub, e.what());
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    failure_record(err, kExitUsage, "usage", c.command_name, sub, e.what());
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    failure_record(err, kExitUsage, "usage", c.command_name, sub, e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    failure_record(err, kExitUsage, "usage", c.command_name, sub, e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    failure_record(err, kExitInvariant, "error", c.command_name, sub, e.what());
    return kExitInvariant;
  }
  return kExitOk;
}

}  // namespace waring::cli
