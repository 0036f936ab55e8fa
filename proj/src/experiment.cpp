#include "ergolab/experiment.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ergolab/averaging.hpp"
#include "ergolab/draws.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/joinings.hpp"
#include "ergolab/uniformity.hpp"

namespace ergolab {

using config::Field;
using config::Json;
using Report = nlohmann::ordered_json;

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> columns) {
    bool first = true;
    for (auto c : columns) {
      out_ += first ? "" : ",";
      out_ += c;
      first = false;
    }
    out_ += '\n';
  }

  Csv& operator<<(double v) { return cell(format_double(v)); }
  Csv& operator<<(std::int64_t v) { return cell(std::to_string(v)); }
  Csv& operator<<(int v) { return cell(std::to_string(v)); }
  Csv& operator<<(bool v) { return cell(v ? "true" : "false"); }
  Csv& end_row() {
    out_ += '\n';
    fresh_ = true;
    return *this;
  }

  const std::string& str() const { return out_; }

 private:
  Csv& cell(const std::string& s) {
    if (!fresh_) out_ += ',';
    out_ += s;
    fresh_ = false;
    return *this;
  }
  std::string out_;
  bool fresh_ = true;
};

struct Context {
  Field root;
  RunOptions opts;
  Budget budget;
  RunResult result;
  std::string form;  // verdict variant, reported when set

  void emit(const std::string& suffix, std::string content) {
    result.artifacts.push_back({opts.name + suffix, std::move(content)});
  }
  void emit_report(Report r) { emit(".json", r.dump(2) + "\n"); }

  std::uint64_t seed() const {
    if (opts.seed) return *opts.seed;
    return root.at("seed").unsigned_integer();
  }
};

Report base_report(const Context& ctx, const std::string& kind) {
  Report r;
  r["schema_version"] = kSchemaVersion;
  r["kind"] = kind;
  r["name"] = ctx.opts.name;
  return r;
}

Report tolerances() {
  Report t;
  t["relative"] = kRelTol;
  t["absolute"] = kAbsTol;
  return t;
}

std::int64_t positive(const Field& f) {
  const std::int64_t v = f.integer();
  if (v < 1) f.fail("must be >= 1");
  return v;
}

std::int64_t positive_or(const Context& ctx, std::string_view key, std::int64_t fallback) {
  const auto f = ctx.root.get(key);
  return f ? positive(*f) : fallback;
}

int oversample_of(const Context& ctx) {
  const std::int64_t o = positive_or(ctx, "oversample", 8);
  if (o < 4) ctx.root.at("oversample").fail("must be >= 4");
  return static_cast<int>(o);
}

void emit_series(Context& ctx, const AverageSeries& s) {
  Csv csv{"N", "re", "im", "cauchy_tail"};
  for (std::size_t i = 0; i < s.schedule.size(); ++i) {
    csv << s.schedule[i] << s.averages[i].real() << s.averages[i].imag() << s.cauchy_tail[i];
    csv.end_row();
  }
  ctx.emit(".csv", csv.str());
}

std::int64_t period_of(const SystemSpec& sys) { return sys.is_finite() ? sys.permutation().order() : 0; }

// ---------------------------------------------------------------------------

void run_average(Context& ctx) {
  const Field& root = ctx.root;
  const SystemSpec sys = config::read_system(root.at("system"));
  const StatePoint x = config::read_state(root.get("state"), sys);
  const auto obs = config::read_observables(root.at("observables"), sys);
  const auto exps = root.at("exponents").int_list();
  if (exps.size() != obs.size()) root.at("exponents").fail("length differs from observables");
  std::optional<WeightSpec> weight;
  if (const auto w = root.get("weight")) weight = config::read_weight(*w);
  const auto schedule = config::read_schedule(root.at("schedule"), period_of(sys));
  ctx.budget.require(static_cast<std::uint64_t>(schedule.back()) * obs.size(), "average");

  const AverageSeries s = multilinear_average(sys, x, obs, exps, weight, schedule);
  emit_series(ctx, s);
  Report r = base_report(ctx, "average");
  r["N"] = s.schedule.back();
  r["re"] = s.last().real();
  r["im"] = s.last().imag();
  r["warnings"] = s.warnings;
  ctx.emit_report(r);
}

void run_sup(Context& ctx) {
  const SequenceWindow c = config::read_sequence(ctx.root.at("sequence"));
  const double normalizer = ctx.root.has("normalizer") ? ctx.root.at("normalizer").number() : 1.0;
  const SupBound s = sup_trig(c, oversample_of(ctx), normalizer);
  Csv csv{"gridMax", "certifiedUpper", "argmaxT", "gridSize"};
  csv << s.grid_max << s.certified_upper << s.argmax_t << s.grid_size;
  csv.end_row();
  ctx.emit(".csv", csv.str());
  Report r = base_report(ctx, "sup");
  r["gridMax"] = s.grid_max;
  r["certifiedUpper"] = s.certified_upper;
  r["argmaxT"] = s.argmax_t;
  r["gridSize"] = s.grid_size;
  ctx.emit_report(r);
}

/// Shared tail of the inequality kinds: one CSV row per case, a summary report.
void finish_inequality(Context& ctx, const std::string& kind, const Csv& csv, std::int64_t cases,
                       std::int64_t failures) {
  ctx.emit(".csv", csv.str());
  Report r = base_report(ctx, kind);
  r["cases"] = cases;
  r["failures"] = failures;
  if (!ctx.form.empty()) r["form"] = ctx.form;
  r["holds"] = failures == 0;
  r["tolerances"] = tolerances();
  r["budget"] = ctx.budget.max_terms;
  ctx.emit_report(r);
  if (failures > 0) ctx.result.passed = false;
}

void run_vdc(Context& ctx) {
  // "displayed" judges the inner sums to N, "classical" the sums to N-h.
  bool classical = false;
  if (const auto form = ctx.root.get("form")) {
    const std::string f = form->string();
    if (f != "displayed" && f != "classical") form->fail("expected \"displayed\" or \"classical\"");
    classical = f == "classical";
  }
  Csv csv{"draw", "N", "H", "lhs", "rhs", "holds", "rhs_classical", "holds_classical"};
  std::int64_t failures = 0;
  std::int64_t cases = 0;
  auto record = [&](std::int64_t id, std::int64_t N, std::int64_t H, const VanDerCorputReport& v) {
    csv << id << N << H << v.lhs << v.rhs << v.holds << v.rhs_classical << v.holds_classical;
    csv.end_row();
    failures += (classical ? v.holds_classical : v.holds) ? 0 : 1;
    ++cases;
  };
  if (const auto draws = ctx.root.get("draws")) {
    const std::int64_t count = positive(*draws);
    const std::int64_t max_n = positive_or(ctx, "max_n", 512);
    const std::uint64_t seed = ctx.seed();
    for (std::int64_t i = 0; i < count; ++i) {
      const VdcDraw d = vdc_draw(seed, static_cast<std::uint64_t>(i), max_n);
      ctx.budget.require(static_cast<std::uint64_t>(d.N) * static_cast<std::uint64_t>(d.H), "van der Corput check");
      record(i, d.N, d.H, van_der_corput_check(d.u, d.N, d.H));
    }
  } else {
    const SequenceWindow u = config::read_sequence(ctx.root.at("sequence"));
    const std::int64_t N = positive(ctx.root.at("N"));
    const std::int64_t H = positive(ctx.root.at("H"));
    ctx.budget.require(static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(H), "van der Corput check");
    try {
      record(0, N, H, van_der_corput_check(u, N, H));
    } catch (const WindowError& e) {
      ctx.root.at("sequence").fail(e.what());
    }
  }
  ctx.form = classical ? "classical" : "displayed";
  finish_inequality(ctx, "vdc", csv, cases, failures);
}

void run_assani(Context& ctx) {
  Csv csv{"draw", "N", "lhs_sq", "mid_sq", "rhs_sup_sq", "holds"};
  std::int64_t failures = 0;
  std::int64_t cases = 0;
  const int oversample = oversample_of(ctx);
  auto record = [&](std::int64_t id, std::int64_t N, const AssaniReport& a) {
    csv << id << N << a.lhs_sq << a.mid_sq << a.rhs_sup_sq << a.holds;
    csv.end_row();
    failures += a.holds ? 0 : 1;
    ++cases;
  };
  if (const auto draws = ctx.root.get("draws")) {
    const std::int64_t count = positive(*draws);
    const std::int64_t max_n = positive_or(ctx, "max_n", 128);
    const std::uint64_t seed = ctx.seed();
    for (std::int64_t i = 0; i < count; ++i) {
      const AssaniDraw d = assani_draw(seed, static_cast<std::uint64_t>(i), max_n);
      record(i, d.N, assani_check(d.N, d.a, d.b, d.c, oversample));
    }
  } else {
    const std::int64_t N = positive(ctx.root.at("N"));
    const SequenceWindow a = config::read_sequence(ctx.root.at("a"));
    const SequenceWindow b = config::read_sequence(ctx.root.at("b"));
    const SequenceWindow c = config::read_sequence(ctx.root.at("c"));
    record(0, N, assani_check(N, a, b, c, oversample));
  }
  finish_inequality(ctx, "assani", csv, cases, failures);
}

void run_cubic_estimate(Context& ctx) {
  Csv csv{"draw", "k", "N", "lhs_sq", "rhs", "holds"};
  std::int64_t failures = 0;
  std::int64_t cases = 0;
  const int oversample = oversample_of(ctx);
  const int k = static_cast<int>(ctx.root.at("k").integer());
  if (k != 3 && k != 4) ctx.root.at("k").fail("cubic estimate needs k = 3 or 4");
  const CubeSpec spec(k);
  auto record = [&](std::int64_t id, std::int64_t N, const CubicEstimateReport& c) {
    csv << id << k << N << c.lhs_sq << c.rhs << c.holds;
    csv.end_row();
    failures += c.holds ? 0 : 1;
    ++cases;
  };
  if (const auto draws = ctx.root.get("draws")) {
    const std::int64_t count = positive(*draws);
    const std::int64_t max_n = positive_or(ctx, "max_n", k == 3 ? 16 : 8);
    const std::uint64_t seed = ctx.seed();
    for (std::int64_t i = 0; i < count; ++i) {
      const CubicDraw d = cubic_draw(seed, static_cast<std::uint64_t>(i), k, max_n);
      record(i, d.N, cubic_estimate_check(spec, d.N, d.sequences, oversample, ctx.budget));
    }
  } else {
    const std::int64_t N = positive(ctx.root.at("N"));
    const Field list = ctx.root.at("sequences");
    std::vector<SequenceWindow> seqs;
    for (std::size_t i = 0; i < list.size(); ++i) seqs.push_back(config::read_sequence(list.at(i)));
    record(0, N, cubic_estimate_check(spec, N, seqs, oversample, ctx.budget));
  }
  finish_inequality(ctx, "cubic_estimate", csv, cases, failures);
}

std::vector<int> read_ks(const Field& root) {
  const Field f = root.at("k");
  std::vector<int> ks;
  if (f.json().is_array()) {
    for (auto v : f.int_list()) ks.push_back(static_cast<int>(v));
  } else {
    ks.push_back(static_cast<int>(f.integer()));
  }
  if (ks.empty()) f.fail("expected at least one k");
  for (int k : ks) {
    if (k < 1) f.fail("k must be >= 1");
  }
  return ks;
}

void run_gowers(Context& ctx) {
  const auto f = ctx.root.at("table").complex_list();
  if (f.empty()) ctx.root.at("table").fail("expected at least one value");
  const auto ks = read_ks(ctx.root);
  Csv csv{"k", "norm"};
  std::vector<double> norms;
  for (int k : ks) {
    norms.push_back(gowers_norm_cyclic(f, k, ctx.budget));
    csv << k << norms.back();
    csv.end_row();
  }
  // Verdict: monotone in k along increasing k.
  bool monotone = true;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    for (std::size_t j = 0; j < ks.size(); ++j) {
      if (ks[i] < ks[j] && !within_tolerance(norms[i], norms[j])) monotone = false;
    }
  }
  ctx.emit(".csv", csv.str());
  Report r = base_report(ctx, "gowers");
  r["p"] = f.size();
  r["norms"] = norms;
  r["holds"] = monotone;
  r["tolerances"] = tolerances();
  ctx.emit_report(r);
  if (!monotone) ctx.result.passed = false;
}

void run_local_seminorm(Context& ctx) {
  const SequenceWindow a = config::read_sequence(ctx.root.at("sequence"));
  const auto ks = read_ks(ctx.root);
  const std::int64_t H = positive(ctx.root.at("H"));
  const std::int64_t N = positive(ctx.root.at("N"));
  Csv csv{"k", "H", "N", "value", "mean", "clamped"};
  Report r = base_report(ctx, "local_seminorm");
  for (int k : ks) {
    const LocalSeminormReport s = local_seminorm(a, k, H, N, ctx.budget);
    csv << k << H << N << s.value << s.mean << s.clamped;
    csv.end_row();
    r["values"].push_back(s.value);
  }
  ctx.emit(".csv", csv.str());
  if (ctx.root.has("emit_table") && ctx.root.at("emit_table").boolean()) {
    const CorrelationTable t = correlation_table(a, ks.back(), H, N, ctx.budget);
    std::string out;
    for (int i = 1; i <= t.k; ++i) out += "h" + std::to_string(i) + ",";
    out += "re,im\n";
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      for (auto h : t.tuple(i)) out += std::to_string(h) + ",";
      out += format_double(t.entries[i].real()) + "," + format_double(t.entries[i].imag()) + "\n";
    }
    ctx.emit("_correlations.csv", out);
  }
  ctx.emit_report(r);
}

void run_hk(Context& ctx) {
  const SystemSpec sys = config::read_system(ctx.root.at("system"));
  const HkBasePoint x = config::read_base_point(ctx.root.get("state"), sys);
  const Observable f = config::read_observable(ctx.root.at("observable"), sys);
  const auto ks = read_ks(ctx.root);
  const std::int64_t H = positive(ctx.root.at("H"));
  const std::int64_t N = positive(ctx.root.at("N"));
  Csv csv{"k", "H", "N", "estimate", "power"};
  Report r = base_report(ctx, "hk");
  for (int k : ks) {
    const double power = hk_seminorm_power(sys, x, f, k, H, N, ctx.budget);
    const double est = std::pow(power, 1.0 / static_cast<double>(std::uint64_t{1} << k));
    csv << k << H << N << est << power;
    csv.end_row();
    r["estimates"].push_back(est);
  }
  ctx.emit(".csv", csv.str());
  if (const auto a = ctx.root.get("vdc_a")) {
    const HkVdcReport v = hk_vdc_bound_report(sys, x, f, a->integer(), ks.front(), H, N, ctx.budget);
    r["vdc"] = {{"a", a->integer()}, {"k", ks.front()}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"ratio", v.ratio}};
  }
  ctx.emit_report(r);
}

JoiningMode read_mode(const Field& f) {
  const std::string m = f.string();
  if (m == "exact-period") return JoiningMode::ExactPeriod;
  if (m == "finite") return JoiningMode::Finite;
  if (m == "monte-carlo") return JoiningMode::MonteCarlo;
  f.fail("expected \"exact-period\", \"finite\" or \"monte-carlo\"");
}

void run_selfjoining(Context& ctx) {
  const SystemSpec sys = config::read_system(ctx.root.at("system"));
  JoiningQuery q;
  q.observables = config::read_observables(ctx.root.at("observables"), sys);
  q.exponents = ctx.root.at("exponents").int_list();
  q.mode = ctx.root.has("mode") ? read_mode(ctx.root.at("mode")) : JoiningMode::ExactPeriod;
  if (q.mode != JoiningMode::ExactPeriod) q.N = positive(ctx.root.at("N"));
  if (q.mode == JoiningMode::MonteCarlo) {
    q.samples = positive(ctx.root.at("samples"));
    q.seed = ctx.seed();
  }
  JoiningEstimate e;
  try {
    e = selfjoining_correlation(sys, q, ctx.budget);
  } catch (const ConfigError& err) {
    ctx.root.fail(err.what());
  }
  Csv csv{"re", "im", "stderr", "N", "samples"};
  csv << e.value.real() << e.value.imag() << e.std_error << e.N << e.samples;
  csv.end_row();
  ctx.emit(".csv", csv.str());
  Report r = base_report(ctx, "selfjoining");
  r["re"] = e.value.real();
  r["im"] = e.value.imag();
  r["stderr"] = e.std_error;
  r["N"] = e.N;
  r["samples"] = e.samples;
  ctx.emit_report(r);
}

void run_seq_corr(Context& ctx) {
  const SequenceWindow z = config::read_sequence(ctx.root.at("sequence"));
  const auto shifts = ctx.root.at("shifts").int_list();
  const auto schedule = config::read_schedule(ctx.root.at("schedule"), 0);
  SequenceCorrelationReport s;
  try {
    s = sequence_correlation(z, shifts, schedule);
  } catch (const WindowError& e) {
    ctx.root.at("sequence").fail(e.what());
  }
  emit_series(ctx, s.partial);
  Report r = base_report(ctx, "seq_corr");
  r["shifts"] = s.shifts;
  r["N"] = s.N;
  r["re"] = s.value.real();
  r["im"] = s.value.imag();
  ctx.emit_report(r);
}

void run_lemma33(Context& ctx) {
  const SystemSpec sys = config::read_system(ctx.root.at("system"));
  const auto obs = config::read_observables(ctx.root.at("observables"), sys);
  const auto exps = ctx.root.at("exponents").int_list();
  const std::int64_t N = positive(ctx.root.at("N"));
  const std::int64_t samples = ctx.root.has("samples") ? ctx.root.at("samples").integer() : 0;
  const std::uint64_t seed = ctx.seed();
  MultivariableEstimateReport m;
  try {
    m = multivariable_estimate_report(sys, obs, exps, N, samples, seed, oversample_of(ctx), ctx.budget);
  } catch (const ConfigError& err) {
    ctx.root.fail(err.what());
  }
  Csv csv{"lhs_surrogate", "min_seminorm", "ratio", "N", "samples", "stderr"};
  csv << m.lhs_surrogate << m.min_seminorm << m.ratio << m.N << m.samples << m.std_error;
  csv.end_row();
  ctx.emit(".csv", csv.str());
  Report r = base_report(ctx, "lemma33");
  r["lhs_surrogate"] = m.lhs_surrogate;
  r["min_seminorm"] = m.min_seminorm;
  r["ratio"] = std::isfinite(m.ratio) ? Report(m.ratio) : Report(nullptr);
  r["N"] = m.N;
  r["samples"] = m.samples;
  r["stderr"] = m.std_error;
  r["seminorms"] = m.seminorms;
  r["lhs_is_lower_bound"] = true;
  ctx.emit_report(r);
}

using Runner = void (*)(Context&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"average", run_average},       {"sup", run_sup},
      {"vdc", run_vdc},               {"assani", run_assani},
      {"cubic_estimate", run_cubic_estimate},
      {"gowers", run_gowers},         {"local_seminorm", run_local_seminorm},
      {"hk", run_hk},                 {"selfjoining", run_selfjoining},
      {"seq_corr", run_seq_corr},     {"lemma33", run_lemma33},
  };
  return table;
}

}  // namespace

RunResult run_experiment(const Json& cfg, const RunOptions& opts) {
  const Field root(cfg, "$");
  if (!cfg.is_object()) root.fail("expected an object");
  Context ctx{root, opts, default_budget(), {}, {}};
  if (const auto n = root.get("name")) ctx.opts.name = n->string();
  if (opts.budget) {
    ctx.budget.max_terms = *opts.budget;
  } else if (const auto b = root.get("budget")) {
    ctx.budget.max_terms = b->unsigned_integer();
    if (ctx.budget.max_terms == 0) b->fail("must be positive");
  }
  const Field kind = root.at("kind");
  const auto it = runners().find(kind.string());
  if (it == runners().end()) kind.fail("unknown kind \"" + kind.string() + "\"");
  it->second(ctx);
  return std::move(ctx.result);
}

RunResult run_experiment_file(const std::filesystem::path& path, const RunOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  RunOptions o = opts;
  if (o.name == RunOptions{}.name) o.name = path.stem().string();
  return run_experiment(cfg, o);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const BudgetError*>(&e)) return kExitBudget;
  return kExitConfig;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ergolab
