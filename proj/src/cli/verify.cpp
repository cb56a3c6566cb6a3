#include <cmath>
#include <functional>

#include "yulecrack/addends.hpp"
#include "yulecrack/cli.hpp"
#include "yulecrack/error.hpp"
#include "yulecrack/fpt.hpp"
#include "yulecrack/quadrature.hpp"
#include "yulecrack/residuals.hpp"

namespace yulecrack::cli {
namespace {

constexpr double kPdeTol = 1e-3;
constexpr double kPdeMinOrder = 1.8;
constexpr double kGeneralPdeTol = 5e-3;
constexpr double kExactTol = 1e-12;
constexpr double kOdeOrderLo = 1.8, kOdeOrderHi = 2.2;
constexpr double kRelaxTol = 5e-3;
constexpr double kMeanRelTol = 1e-6;
constexpr double kLevel = 0.01;

std::optional<double> alpha_of(const BernsteinFamily& f) {
  if (f.is<family::Stable>()) return f.as<family::Stable>().alpha;
  if (f.is<family::TemperedStable>()) return f.as<family::TemperedStable>().alpha;
  return std::nullopt;
}

Check report_check(const std::string& name, const ResidualReport& r, bool passed, std::string note = {}) {
  Check c{name, passed, {{"max_abs", r.max_abs}, {"l2", r.l2}}, std::move(note)};
  if (r.convergence_order) c.metrics.push_back({"convergence_order", *r.convergence_order});
  if (r.identity_max_abs) c.metrics.push_back({"identity_max_abs", *r.identity_max_abs});
  if (r.alternate_max_abs) c.metrics.push_back({"alternate_max_abs", *r.alternate_max_abs});
  return c;
}

void pde_checks(const CompoundBirthModel& m, bool quick, std::vector<Check>& out) {
  const auto& f = m.law.family;
  const std::string tag = f.describe();
  if (f.is<family::Linear>()) {
    const std::size_t n = quick ? 100 : 300;
    const auto r = pde_residual_exponential(m, {0.1, 3.0, n, 0.1, 3.0, n});
    out.push_back(report_check("pde " + tag, r,
                               r.max_abs < kPdeTol && r.convergence_order.value_or(0.0) >= kPdeMinOrder));
    return;
  }
  if (f.is_discrete()) {
    const std::vector<double> ts{0.5, 1.0, 2.0};
    const auto r = discrete_equation_residual(m, 20, ts);
    out.push_back(report_check("discrete equation " + tag, r,
                               r.max_abs < kExactTol && r.identity_max_abs.value_or(1.0) < kExactTol,
                               "alternate_max_abs: residual with the convolution written as y a^2 k^y/(a+k)^(y+2)"));
    return;
  }
  const auto alpha = alpha_of(f);
  if (!alpha || *alpha < 0.5) {
    out.push_back({"pde " + tag, true, {},
                   "not applicable: f*f is unbounded at the origin, the equation is checked in the transform domain"});
    return;
  }
  const auto r = pde_residual_general(m, {4.0, quick ? std::size_t{80} : std::size_t{160}, 0.5, 1.5, 3});
  const bool ok = r.max_abs < kGeneralPdeTol && r.convergence_order.value_or(0.0) > 0.0;
  out.push_back(report_check("pde " + tag, r, ok,
                             ok ? "" : "alternate_max_abs: residual with the boundary term (f*f)(0+) nu(y) restored"));
}

void laplace_checks(const CompoundBirthModel& m, std::vector<Check>& out) {
  const std::vector<double> thetas{0.5, 1.0, 5.0};
  const auto r = laplace_ode_check(m, thetas, {0.1, 2.0, 41});
  const double order = r.convergence_order.value_or(0.0);
  out.push_back(report_check("laplace ode " + m.law.family.describe(), r, order >= kOdeOrderLo && order <= kOdeOrderHi));
}

void relaxation_checks(const AddendLaw& law, bool quick, std::vector<Check>& out) {
  const auto& f = law.family;
  const std::string name = "relaxation " + f.describe();
  if (f.is_discrete()) {
    const auto u = GridFunction::tabulate(0.0, 1.0, 41, [&](double x) { return addend_survival(law, x); });
    const double r = relaxation_residual(law, u);
    out.push_back({name, r < kExactTol, {{"max_abs", r}}, ""});
    return;
  }
  const std::size_t n = quick ? 500 : 1999;
  const double grading = alpha_of(f) ? grading_for(*alpha_of(f)) : 1.0;
  auto residual = [&](std::size_t intervals) {
    const auto u = MeshFunction::tabulate(graded_mesh(10.0, intervals, grading),
                                          [&](double x) { return addend_survival(law, x); });
    return relaxation_residual(law, u);
  };
  const double fine = residual(n), coarse = residual(n / 2);
  out.push_back({name, fine < kRelaxTol && fine < coarse, {{"max_abs", fine}, {"max_abs_half_points", coarse}}, ""});
}

void timechange_checks(const CompoundBirthModel& m, bool quick, std::uint64_t seed, unsigned workers,
                       std::vector<Check>& out) {
  const auto r = time_change_check(m, 1.0, quick ? 20000 : 100000, seed, workers, kLevel);
  out.push_back({"time change " + m.law.family.describe(), r.passed,
                 {{"statistic", r.statistic}, {"p_value", r.p_value}, {"level", r.level}}, r.method});
}

void fpt_checks(const CompoundBirthModel& m, bool quick, std::uint64_t seed, unsigned workers,
                std::vector<Check>& out) {
  const std::string tag = m.law.family.describe();
  for (double beta : {1.0, 2.0, 5.0}) {
    const auto mean = fpt_mean(m, beta);
    Check c{"mean first passage " + tag + " beta=" + format_number(beta), true,
            {{"value", mean.value}}, "path=" + to_string(mean.path)};
    if (mean.discrepancy) {
      c.metrics.push_back({"relative_discrepancy", *mean.discrepancy});
      c.passed = *mean.discrepancy < kMeanRelTol;
    }
    if (mean.divergent_in_limit) c.note += "; divergent_in_limit";
    out.push_back(std::move(c));
  }
  // Path simulation against the closed-form crossing probability.
  constexpr double beta = 2.0, horizon = 2.0;
  const std::size_t n = quick ? 5000 : 10000;
  const auto emp = mc_ruin_time(m, 0.0, beta, horizon, n, seed, workers);
  double worst = 0.0;
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    const double p = fpt_cdf(m, beta, t);
    const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(n));
    worst = std::max(worst, std::abs(emp(std::nextafter(t, 0.0)) - p) / se);
  }
  out.push_back({"crossing probability vs paths " + tag, worst < 4.0, {{"max_standard_errors", worst}}, ""});
  if (const auto alpha = alpha_of(m.law.family); alpha && m.law.family.is<family::Stable>()) {
    const double norm = quad::integrate_to_infinity(
        [&](double x) { return x <= 0.0 ? 0.0 : fractional_gumbel_pdf(*alpha, beta, x); }, 0.0, {.rel_tol = 1e-11});
    out.push_back({"gumbel normalisation alpha=" + format_number(*alpha), std::abs(norm - 1.0) < 1e-8,
                   {{"integral", norm}}, ""});
  }
}

}  // namespace

VerifyReport cmd_verify(const RunConfig& c) {
  VerifyReport rep{c.suite, {}};
  auto& out = rep.checks;
  const bool quick = c.quick;
  if (c.suite == "all") {
    const auto exp = CompoundBirthModel(1.0, AddendLaw(BernsteinFamily::linear(), 1.0));
    const auto st = CompoundBirthModel(1.0, AddendLaw(BernsteinFamily::stable(0.5), 1.0));
    const auto ga = CompoundBirthModel(1.0, AddendLaw(BernsteinFamily::gamma(1.0), 1.0));
    pde_checks(exp, quick, out);
    pde_checks(CompoundBirthModel(1.0, AddendLaw(BernsteinFamily::stable(0.75), 1.0)), quick, out);
    pde_checks(CompoundBirthModel(1.0, AddendLaw(BernsteinFamily::poisson(1.0), 1.0)), quick, out);
    for (const auto& f : {BernsteinFamily::linear(), BernsteinFamily::stable(0.5), BernsteinFamily::tempered_stable(0.5, 5.0),
                          BernsteinFamily::gamma(1.0), BernsteinFamily::poisson(1.0)})
      laplace_checks(CompoundBirthModel(1.0, AddendLaw(f, 1.0)), out);
    relaxation_checks(st.law, quick, out);
    relaxation_checks(AddendLaw(BernsteinFamily::poisson(1.0), 1.0), quick, out);
    timechange_checks(st, quick, c.seed, c.workers, out);
    timechange_checks(ga, quick, c.seed, c.workers, out);
    fpt_checks(st, quick, c.seed, c.workers, out);
    return rep;
  }
  const auto m = c.spec.model();
  if (c.suite == "pde")
    pde_checks(m, quick, out);
  else if (c.suite == "laplace")
    laplace_checks(m, out);
  else if (c.suite == "relaxation")
    relaxation_checks(m.law, quick, out);
  else if (c.suite == "discrete") {
    if (!m.law.family.is_discrete()) throw ConfigError("suite discrete needs --family poisson");
    pde_checks(m, quick, out);
  } else if (c.suite == "timechange")
    timechange_checks(m, quick, c.seed, c.workers, out);
  else if (c.suite == "fpt")
    fpt_checks(m, quick, c.seed, c.workers, out);
  else
    throw ConfigError("unknown suite " + c.suite);
  return rep;
}

}  // namespace yulecrack::cli
