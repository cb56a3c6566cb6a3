#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "yulecrack/cli.hpp"
#include "yulecrack/error.hpp"
#include "yulecrack/fpt.hpp"

namespace yulecrack::cli {

CompoundBirthModel ModelSpec::model() const {
  try {
    BernsteinFamily f = BernsteinFamily::linear();
    if (family == "exp" || family == "linear")
      f = BernsteinFamily::linear();
    else if (family == "stable")
      f = BernsteinFamily::stable(alpha);
    else if (family == "tempered")
      f = BernsteinFamily::tempered_stable(alpha, mu);
    else if (family == "gamma")
      f = BernsteinFamily::gamma(b);
    else if (family == "poisson")
      f = BernsteinFamily::poisson(kappa.value_or(lambda));
    else
      throw ConfigError("unknown family '" + family + "' (exp, stable, tempered, gamma, poisson)");
    return CompoundBirthModel(lambda, AddendLaw(f, xi));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

namespace {

std::vector<std::pair<std::string, std::string>> model_meta(const RunConfig& c) {
  const auto m = c.spec.model();
  return {{"family", m.law.family.describe()}, {"lambda", format_number(m.lambda)}, {"xi", format_number(m.law.xi)}};
}

std::vector<double> axis_points(double from, double to, std::size_t n) {
  if (n < 2 || !(to > from)) throw ConfigError("need --points >= 2 and --to > --from");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

}  // namespace

Table cmd_simulate(const RunConfig& c) {
  const auto m = c.spec.model();
  Table t{"simulate", model_meta(c), {}, {}};
  t.meta.push_back({"seed", std::to_string(c.seed)});
  t.meta.push_back({"workers", std::to_string(c.workers)});
  t.meta.push_back({"n", std::to_string(c.n)});
  if (!c.horizon) {
    t.meta.push_back({"t", format_number(c.t)});
    t.columns = {"value"};
    for (double v : sample_values(m, c.t, c.n, c.seed, c.workers)) t.rows.push_back({v});
    return t;
  }
  t.meta.push_back({"horizon", format_number(*c.horizon)});
  t.columns = {"path", "time", "value"};
  RngStream rng(c.seed);
  for (std::size_t p = 0; p < c.n; ++p) {
    const auto path = sample_path(m, *c.horizon, rng);
    const double id = static_cast<double>(p);
    t.rows.push_back({id, 0.0, path.initial});
    for (double e : path.event_times) t.rows.push_back({id, e, path.value_at(e)});
  }
  return t;
}

Table cmd_pdf(const RunConfig& c) {
  const auto m = c.spec.model();
  Table t{"pdf", model_meta(c), {"y", "pdf"}, {}};
  t.meta.push_back({"t", format_number(c.t)});
  if (m.law.family.is_discrete()) {
    for (double y = std::ceil(std::max(c.from, 0.0)); y <= c.to; y += 1.0) t.rows.push_back({y, pdf_value(m, y, c.t)});
    return t;
  }
  const double from = c.from > 0.0 ? c.from : c.to / static_cast<double>(c.points);
  for (double y : axis_points(from, c.to, c.points)) t.rows.push_back({y, pdf_value(m, y, c.t)});
  return t;
}

Table cmd_fpt(const RunConfig& c) {
  const auto m = c.spec.model();
  Table t{"fpt", model_meta(c), {}, {}};
  const bool has_pdf = m.law.family.is<family::Linear>() || m.law.family.is<family::Stable>();
  if (c.axis == "t") {
    const auto mean = fpt_mean(m, c.beta);
    t.meta.push_back({"beta", format_number(c.beta)});
    t.meta.push_back({"atom", format_number(fpt_atom(m, c.beta))});
    t.meta.push_back({"mean", format_number(mean.value)});
    t.meta.push_back({"mean_path", to_string(mean.path)});
    t.columns = {"t", "cdf", "pdf"};
    for (double time : axis_points(c.from, c.to, c.points))
      t.rows.push_back({time, fpt_cdf(m, c.beta, time),
                        has_pdf && time > 0.0 ? fpt_pdf(m, c.beta, time) : std::numeric_limits<double>::quiet_NaN()});
  } else if (c.axis == "beta") {
    t.meta.push_back({"t", format_number(c.t)});
    t.columns = {"beta", "cdf"};
    const double from = c.from > 0.0 ? c.from : c.to / static_cast<double>(c.points);
    for (double beta : axis_points(from, c.to, c.points)) {
      const double level = m.law.family.is_discrete() ? std::round(beta) : beta;
      t.rows.push_back({level, fpt_cdf(m, level, c.t)});
    }
  } else {
    throw ConfigError("--axis must be t or beta");
  }
  return t;
}

Table cmd_reproduce(const RunConfig& c) { return figure_table(c.figure, c.n, c.seed, c.workers); }

namespace {

void add_model_options(CLI::App* s, RunConfig& c) {
  s->add_option("--family", c.spec.family, "exp | stable | tempered | gamma | poisson");
  s->add_option("--lambda", c.spec.lambda, "birth rate");
  s->add_option("--xi", c.spec.xi, "rate of the exponential time in each addend");
  s->add_option("--alpha", c.spec.alpha, "stability index (stable, tempered)");
  s->add_option("--mu", c.spec.mu, "tempering parameter");
  s->add_option("--b", c.spec.b, "gamma subordinator rate");
  s->add_option("--kappa", c.spec.kappa, "Poisson subordinator intensity (default: lambda)");
}

void add_io_options(CLI::App* s, RunConfig& c) {
  s->add_option("--seed", c.seed, "random seed");
  s->add_option("--workers", c.workers, "sampling threads (part of the deterministic configuration)");
  s->add_option("-o,--out", c.output, "output file (default: standard output)");
  s->add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  s->add_option("--config", "JSON file whose keys mirror the flags; flags win");
}

// Config-file keys become flags placed before the real arguments; with
// take-last semantics the command line wins.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") path = args[i + 1];
  for (const auto& a : args)
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  if (path.empty() || args.empty()) return args;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config " + path + ": expected a JSON object");
  std::vector<std::string> injected;
  for (const auto& [k, v] : j.items()) {
    if (v.is_boolean()) {
      if (v.get<bool>()) injected.push_back("--" + k);
      continue;
    }
    injected.push_back("--" + k);
    if (v.is_string())
      injected.push_back(v.get<std::string>());
    else if (v.is_number_integer() || v.is_number_unsigned())
      injected.push_back(std::to_string(v.get<std::int64_t>()));
    else if (v.is_number())
      injected.push_back(format_number(v.get<double>()));
    else
      throw ConfigError("config key " + k + ": expected a scalar");
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

void emit(const Table& t, const RunConfig& c, std::ostream& out) {
  auto write = [&](std::ostream& os) { c.format == "json" ? write_json(os, t) : write_csv(os, t); };
  if (c.output.empty()) {
    write(out);
  } else {
    std::ofstream f(c.output);
    if (!f) throw IoError("cannot open " + c.output);
    write(f);
    if (!f) throw IoError("write failed: " + c.output);
  }
  if (!c.svg.empty()) {
    std::ofstream f(c.svg);
    if (!f) throw IoError("cannot open " + c.svg);
    write_svg(f, t, t.kind);
    if (!f) throw IoError("write failed: " + c.svg);
  }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Compound Yule process: simulation, densities, first passage and verification"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  auto* sim = app.add_subcommand("simulate", "draw Y(t), or whole paths with --horizon");
  auto* pdf = app.add_subcommand("pdf", "tabulate the density of Y(t)");
  auto* fpt = app.add_subcommand("fpt", "tabulate the first-passage probability");
  auto* ver = app.add_subcommand("verify", "run a verification suite, JSON report");
  auto* rep = app.add_subcommand("reproduce", "emit a figure table");
  for (auto* s : {sim, pdf, fpt, ver, rep}) {
    s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    add_model_options(s, c);
    add_io_options(s, c);
  }
  for (auto* s : {sim, pdf, fpt}) s->add_option("--t", c.t, "time");
  sim->add_option("--n", c.n, "number of draws or paths");
  sim->add_option("--horizon", c.horizon, "emit paths on [0, horizon]");
  for (auto* s : {pdf, fpt}) {
    s->add_option("--from", c.from, "first axis value");
    s->add_option("--to", c.to, "last axis value");
    s->add_option("--points", c.points, "axis points");
  }
  fpt->add_option("--beta", c.beta, "level (axis t)");
  fpt->add_option("--axis", c.axis, "t | beta")->check(CLI::IsMember({"t", "beta"}));
  ver->add_option("--suite", c.suite, "pde | laplace | relaxation | discrete | timechange | fpt | all");
  ver->add_flag("--quick", c.quick, "reduced sample sizes and grids");
  rep->add_option("--figure", c.figure, "1..5")->check(CLI::Range(1, 5));
  rep->add_option("--n", c.n, "Monte Carlo sample size");
  for (auto* s : {pdf, fpt, rep}) s->add_option("--svg", c.svg, "also write a line plot");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kBadConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  if (chosen->count("--seed") == 0)
    if (const char* env = std::getenv("YULECRACK_SEED")) {
      try {
        c.seed = std::stoull(env);
      } catch (const std::exception&) {
        err << "error: YULECRACK_SEED is not an unsigned integer\n";
        return kBadConfig;
      }
    }
  if (c.workers == 0) {
    err << "error: --workers must be >= 1\n";
    return kBadConfig;
  }

  try {
    if (c.command == "verify") {
      const auto report = cmd_verify(c);
      if (c.output.empty()) {
        write_report(out, report);
      } else {
        std::ofstream f(c.output);
        if (!f) throw IoError("cannot open " + c.output);
        write_report(f, report);
        if (!f) throw IoError("write failed: " + c.output);
      }
      return report.passed() ? kOk : kVerifyFailed;
    }
    c.spec.model();
    const Table t = c.command == "simulate" ? cmd_simulate(c)
                    : c.command == "pdf"    ? cmd_pdf(c)
                    : c.command == "fpt"    ? cmd_fpt(c)
                                            : cmd_reproduce(c);
    emit(t, c, out);
    return kOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const GridError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
}

}  // namespace yulecrack::cli
