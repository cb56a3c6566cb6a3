// One line per acceptance criterion. Usage: acceptance [criterion...]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "yulecrack/addends.hpp"
#include "yulecrack/cli.hpp"
#include "yulecrack/compound.hpp"
#include "yulecrack/fpt.hpp"
#include "yulecrack/laplace.hpp"
#include "yulecrack/quadrature.hpp"
#include "yulecrack/residuals.hpp"
#include "yulecrack/stats.hpp"

using namespace yulecrack;

namespace {

constexpr std::uint64_t kSeed = 12345;
constexpr unsigned kWorkers = 4;
constexpr double kLevel = 0.01;

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

CompoundBirthModel model(const BernsteinFamily& f, double lambda = 1.0, double xi = 1.0) {
  return CompoundBirthModel(lambda, AddendLaw(f, xi));
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// KS p-values are computed inside the figure table from its own samples.
Outcome c1_figure1() {
  const auto fig = cli::figure_table(1, 100000, kSeed, kWorkers);
  bool ok = true;
  std::string d;
  for (const char* t : {"0.5", "1", "2"}) {
    double p = -1.0;
    for (const auto& [k, v] : fig.meta)
      if (k == std::string("ks_p_value_t") + t) p = std::stod(v);
    ok &= p >= kLevel;
    d += std::string("t=") + t + " p=" + fmt("%.3f", p) + " ";
  }
  return {ok, d + "rows=" + std::to_string(fig.rows.size())};
}

Outcome c2_exponential_pde() {
  const auto r = pde_residual_exponential(model(BernsteinFamily::linear()), {0.1, 3.0, 300, 0.1, 3.0, 300});
  const double order = r.convergence_order.value_or(0.0);
  return {r.max_abs < 1e-3 && order >= 1.8,
          "max=" + fmt("%.3e", r.max_abs) + " order=" + fmt("%.3f", order) + " identity=" +
              fmt("%.1e", r.identity_max_abs.value_or(NAN))};
}

Outcome c3_transform_ode() {
  bool ok = true;
  double lo = 10.0, hi = -10.0;
  for (const auto& f : {BernsteinFamily::linear(), BernsteinFamily::stable(0.5), BernsteinFamily::tempered_stable(0.5, 5.0),
                        BernsteinFamily::gamma(1.0), BernsteinFamily::poisson(1.0)})
    for (double theta : {0.5, 1.0, 5.0}) {
      const std::vector<double> th{theta};
      const auto r = laplace_ode_check(model(f), th, {0.1, 2.0, 41});
      const double order = r.convergence_order.value_or(0.0);
      ok &= order >= 1.9 && order <= 2.1;
      lo = std::min(lo, order);
      hi = std::max(hi, order);
    }
  return {ok, "15 cases, order in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "]"};
}

Outcome c4_reductions() {
  double d_lin = 0.0;
  const auto lin = model(BernsteinFamily::linear());
  const auto one = model(BernsteinFamily::stable(1.0));
  for (double t : {0.0, 0.5, 1.0, 2.0})
    for (double y = 0.05; y <= 5.0; y += 0.05) d_lin = std::max(d_lin, std::abs(pdf_value(one, y, t) - pdf_value(lin, y, t)));
  bool ok = d_lin < 1e-12;
  std::string d = "stable(1)-linear=" + fmt("%.1e", d_lin);
  for (double alpha : {0.5, 0.8}) {
    const auto st = model(BernsteinFamily::stable(alpha));
    const auto te = model(BernsteinFamily::tempered_stable(alpha, 1e-6));
    double diff = 0.0;
    for (double y = 0.05; y <= 5.0; y += 0.05) diff = std::max(diff, std::abs(pdf_value(te, y, 1.0) - pdf_value(st, y, 1.0)));
    ok &= diff < 1e-4;
    d += " tempered(alpha=" + fmt("%g", alpha) + ",mu=1e-6)-stable=" + fmt("%.1e", diff);
  }
  return {ok, d + " (the exact gap scales like mu^alpha)"};
}

Outcome c5_time_change() {
  bool ok = true;
  std::string d;
  for (const auto& f : {BernsteinFamily::stable(0.5), BernsteinFamily::gamma(1.0)}) {
    const auto r = time_change_check(model(f), 1.0, 100000, kSeed, kWorkers, kLevel);
    ok &= r.passed;
    d += f.describe() + " D=" + fmt("%.4f", r.statistic) + " p=" + fmt("%.3f", r.p_value) + " ";
  }
  return {ok, d};
}

Outcome c6_discrete() {
  const std::vector<double> ts{0.5, 1.0, 2.0};
  const auto r = discrete_equation_residual(model(BernsteinFamily::poisson(1.0)), 20, ts);
  return {r.max_abs < 1e-12 && r.identity_max_abs.value_or(1.0) < 1e-12,
          "residual=" + fmt("%.1e", r.max_abs) + " convolution identity=" + fmt("%.1e", *r.identity_max_abs) +
              " (factor y instead of y+1 leaves " + fmt("%.3f", *r.alternate_max_abs) + ")"};
}

Outcome c7_mean() {
  bool agree = true;
  double worst = 0.0;
  for (auto [xi, lambda, beta] : {std::tuple{1.0, 1.0, 1.0}, std::tuple{0.5, 1.0, 2.0}, std::tuple{1.0, 2.0, 5.0}})
    for (const auto& f : {BernsteinFamily::linear(), BernsteinFamily::stable(0.5)}) {
      const auto m = model(f, lambda, xi);
      const auto mean = fpt_mean(m, beta);
      const double rel = std::abs(mean.value - fpt_mean_quadrature(m, beta)) / mean.value;
      agree &= mean.path == FptMean::Path::FoxWright && rel < 1e-6;
      worst = std::max(worst, rel);
    }
  // Bounded means would need shrinking increments across decades of the level.
  bool bounded = true;
  std::string seq;
  for (const auto& f : {BernsteinFamily::linear(), BernsteinFamily::stable(0.5)}) {
    const auto m = model(f);
    std::vector<double> v;
    for (double beta : {10.0, 100.0, 1000.0, 10000.0}) v.push_back(fpt_mean(m, beta).value);
    const double first = v[1] - v[0], last = v[3] - v[2];
    bounded &= last < 0.5 * first;
    seq += f.describe() + " [" + fmt("%.2f", v[0]) + " " + fmt("%.2f", v[1]) + " " + fmt("%.2f", v[2]) + " " +
           fmt("%.2f", v[3]) + "] ";
  }
  return {agree && bounded, "fox-wright vs quadrature max rel=" + fmt("%.1e", worst) + (agree ? " ok" : " FAIL") +
                                "; bounded=" + (bounded ? "yes " : "no, grows like ln(beta): ") + seq};
}

Outcome c8_atom_slope() {
  bool ok = true;
  std::string d;
  for (double alpha : {0.3, 0.5, 0.8}) {
    const auto m = model(BernsteinFamily::stable(alpha));
    std::vector<double> x, y;
    for (double e = 1.0; e <= 4.0 + 1e-9; e += 0.25) {
      x.push_back(e * std::log(10.0));
      y.push_back(std::log(fpt_atom(m, std::pow(10.0, e))));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    const double slope = sxy / sxx;
    ok &= std::abs(slope + alpha) <= 0.05;
    d += "alpha=" + fmt("%g", alpha) + " slope=" + fmt("%.3f", slope) + " ";
  }
  return {ok, d};
}

Outcome c9_relaxation() {
  const AddendLaw law(BernsteinFamily::stable(0.5), 1.0);
  auto res = [&](std::size_t points) {
    const auto u = MeshFunction::tabulate(graded_mesh(10.0, points - 1, grading_for(0.5)),
                                          [&](double x) { return addend_survival(law, x); });
    return relaxation_residual(law, u);
  };
  const double fine = res(2000), coarse = res(1000);
  const AddendLaw geo(BernsteinFamily::poisson(1.0), 1.0);
  const double discrete = relaxation_residual(
      geo, GridFunction::tabulate(0.0, 1.0, 41, [&](double x) { return addend_survival(geo, x); }));
  return {fine < 5e-3 && fine < coarse && discrete < 1e-15,
          "2000 points=" + fmt("%.2e", fine) + " 1000 points=" + fmt("%.2e", coarse) + " poisson=" +
              fmt("%.1e", discrete)};
}

Outcome c10_gumbel() {
  bool ok = true;
  std::string d;
  for (auto [alpha, beta] : {std::pair{0.5, 2.0}, std::pair{0.8, 5.0}}) {
    const double total = quad::integrate_to_infinity(
        [&](double x) { return x <= 0.0 ? 0.0 : fractional_gumbel_pdf(alpha, beta, x); }, 0.0, {.rel_tol = 1e-12});
    ok &= std::abs(total - 1.0) < 1e-8;
    d += "(" + fmt("%g", alpha) + "," + fmt("%g", beta) + ") 1-int=" + fmt("%.1e", 1.0 - total) + " ";
  }
  return {ok, d};
}

Outcome c11_gamma() {
  const AddendLaw law(BernsteinFamily::gamma(1.0), 1.0);
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    const auto inv = laplace_invert([&](std::complex<double> s) { return law.xi / (law.xi + laplace_exponent(law.family, s)); }, x);
    worst = std::max(worst, std::abs(inv.value - addend_density(law, x)));
  }
  // The compound density behaves like a / (y log^2 y) at the origin, so the
  // mass below y is about a / |log y|; integrate in s = -log y down to e^{-700}.
  const auto m = model(BernsteinFamily::gamma(1.0));
  auto g = [&](double s) {
    const double y = std::exp(-s);
    return pdf_inversion(m, y, 1.0).value * y;
  };
  const std::vector<double> breaks{-std::log(80.0), 0.0, 5.0, 20.0, 100.0, 300.0, 700.0};
  const double mass = quad::integrate_pieces(g, breaks, false, {.rel_tol = 1e-8});
  const double below = addend_cdf(m.marginal_law(1.0), std::exp(-700.0));
  return {worst < 1e-5 && std::abs(mass - 1.0) < 1e-3,
          "density max diff=" + fmt("%.1e", worst) + " compound mass on [e^-700, 80] - 1=" + fmt("%.2e", mass - 1.0) +
              " (mixture cdf below e^-700: " + fmt("%.2e", below) + ")"};
}

bool has_meta(const cli::Table& t, const std::string& key, const std::string& value) {
  for (const auto& [k, v] : t.meta)
    if (k == key) return v == value;
  return false;
}

Outcome c12_figures() {
  const auto dir = std::filesystem::path("acceptance_figures");
  std::filesystem::create_directories(dir);
  std::vector<cli::Table> figs;
  for (int f = 2; f <= 5; ++f) {
    figs.push_back(cli::figure_table(f, 100000, kSeed, kWorkers));
    std::ofstream out(dir / ("figure" + std::to_string(f) + ".csv"));
    cli::write_csv(out, figs.back());
  }
  const bool params =
      has_meta(figs[0], "t", "1") && has_meta(figs[0], "lambda", "1") && has_meta(figs[0], "xi", "0.5") &&
      has_meta(figs[0], "mu", "10") && has_meta(figs[0], "alpha", "0.2 0.5 0.8") && has_meta(figs[1], "xi", "1") &&
      has_meta(figs[1], "alpha", "0.8") && has_meta(figs[1], "t", "1") && has_meta(figs[2], "mu", "5") &&
      has_meta(figs[2], "alpha", "0.5") && has_meta(figs[2], "t", "1") && has_meta(figs[3], "beta", "2") &&
      has_meta(figs[3], "mu", "5");
  int held = 0, total = 0;
  std::string failed;
  for (const auto& o : cli::figure_orderings(figs[0], figs[1])) {
    ++total;
    if (o.difference > 0.0)
      ++held;
    else
      failed += " [" + o.claim + "]";
  }
  return {params && held == total, std::string("parameters ") + (params ? "ok" : "MISMATCH") + ", orderings " +
                                       std::to_string(held) + "/" + std::to_string(total) + failed +
                                       ", csv in " + dir.string()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "figure 1: Y(t) samples vs exponential law (KS, N=1e5)", 10, c1_figure1},
      {2, "exponential equation residual, 300x300 grid", 30, c2_exponential_pde},
      {3, "transform-domain Riccati equation, order 2 in t", 5, c3_transform_ode},
      {4, "special-case reductions", 1, c4_reductions},
      {5, "time-change identity (two-sample KS, N=1e5)", 60, c5_time_change},
      {6, "poisson discrete equation", 1, c6_discrete},
      {7, "mean first passage: fox-wright vs quadrature, boundedness", 10, c7_mean},
      {8, "atom tail exponent", 5, c8_atom_slope},
      {9, "relaxation equation residual", 20, c9_relaxation},
      {10, "fractional gumbel normalisation", 1, c10_gumbel},
      {11, "gamma case round trip", 30, c11_gamma},
      {12, "figures 2-5 tables and orderings", 60, c12_figures},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.passed && secs < c.limit_s;
    failures += !ok;
    std::printf("C%02d %s  %s | %s | %.2f s (limit %g s)\n", c.id, ok ? "PASS" : "FAIL", c.title, o.detail.c_str(),
                secs, c.limit_s);
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
