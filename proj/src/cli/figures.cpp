#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "yulecrack/cli.hpp"
#include "yulecrack/error.hpp"
#include "yulecrack/fpt.hpp"
#include "yulecrack/stats.hpp"

namespace yulecrack::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

CompoundBirthModel make(const BernsteinFamily& f, double lambda, double xi) {
  return CompoundBirthModel(lambda, AddendLaw(f, xi));
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n < 2) throw ConfigError("need at least 2 points");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// Histogram density on bins [c - h/2, c + h/2) around the given centres.
std::vector<double> histogram_density(const std::vector<double>& samples, const std::vector<double>& centres,
                                      double h) {
  std::vector<double> d(centres.size(), 0.0);
  const double lo = centres.front() - 0.5 * h;
  for (double s : samples) {
    const double k = std::floor((s - lo) / h);
    if (k >= 0.0 && k < static_cast<double>(centres.size())) d[static_cast<std::size_t>(k)] += 1.0;
  }
  for (double& v : d) v /= static_cast<double>(samples.size()) * h;
  return d;
}

double quantile(std::vector<double> sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto k = static_cast<std::size_t>(pos);
  const double w = pos - static_cast<double>(k);
  return k + 1 < sorted.size() ? (1.0 - w) * sorted[k] + w * sorted[k + 1] : sorted[k];
}

std::uint64_t substream(std::uint64_t seed, std::uint64_t k) { return seed + 0x9e3779b97f4a7c15ull * (k + 1); }

Table figure1(std::size_t n, std::uint64_t seed, unsigned workers) {
  Table t{"figure1", {{"figure", "1"}, {"lambda", "1"}, {"xi", "1"}, {"n", std::to_string(n)},
                      {"seed", std::to_string(seed)}, {"bins", "freedman-diaconis"}},
          {"y", "t", "pdf_theory", "pdf_empirical"}, {}};
  t.group_column = 1;
  const auto m = make(BernsteinFamily::linear(), 1.0, 1.0);
  const double times[] = {0.5, 1.0, 2.0};
  for (std::size_t k = 0; k < 3; ++k) {
    auto s = sample_values(m, times[k], n, substream(seed, k), workers);
    std::sort(s.begin(), s.end());
    const double iqr = quantile(s, 0.75) - quantile(s, 0.25);
    const double h = 2.0 * iqr * std::cbrt(1.0 / static_cast<double>(n));
    const auto bins = static_cast<std::size_t>(std::ceil(s.back() / h));
    std::vector<double> centres(bins);
    for (std::size_t i = 0; i < bins; ++i) centres[i] = (static_cast<double>(i) + 0.5) * h;
    const auto emp = histogram_density(s, centres, h);
    const double a = std::exp(-times[k]);
    const auto ks = stats::ks_test(s, [a](double y) { return -std::expm1(-a * y); });
    t.meta.push_back({"ks_p_value_t" + str(times[k]), format_number(ks.p_value)});
    for (std::size_t i = 0; i < bins; ++i)
      t.rows.push_back({centres[i], times[k], pdf_value(m, centres[i], times[k]), emp[i]});
  }
  return t;
}

Table figure2(std::size_t n, std::uint64_t seed, unsigned workers) {
  constexpr double mu = 10.0, xi = 0.5, lambda = 1.0, time = 1.0, h = 0.05;
  Table t{"figure2", {{"figure", "2"}, {"t", "1"}, {"lambda", "1"}, {"xi", "0.5"}, {"mu", "10"},
                      {"alpha", "0.2 0.5 0.8"}, {"n", std::to_string(n)}, {"seed", std::to_string(seed)},
                      {"bin_width", str(h)}},
          {"alpha", "y", "pdf_exp", "pdf_stable", "pdf_tempered", "emp_exp", "emp_stable", "emp_tempered"}, {}};
  t.x_column = 1;
  t.group_column = 0;
  std::vector<double> centres;
  for (std::size_t i = 0; i < 200; ++i) centres.push_back((static_cast<double>(i) + 0.5) * h);
  const double alphas[] = {0.2, 0.5, 0.8};
  for (std::size_t k = 0; k < 3; ++k) {
    const CompoundBirthModel models[] = {make(BernsteinFamily::linear(), lambda, xi),
                                         make(BernsteinFamily::stable(alphas[k]), lambda, xi),
                                         make(BernsteinFamily::tempered_stable(alphas[k], mu), lambda, xi)};
    std::vector<std::vector<double>> emp;
    for (std::size_t f = 0; f < 3; ++f)
      emp.push_back(n ? histogram_density(sample_values(models[f], time, n, substream(seed, 3 * k + f), workers),
                                          centres, h)
                      : std::vector<double>(centres.size(), kNaN));
    for (std::size_t i = 0; i < centres.size(); ++i) {
      const double y = centres[i];
      t.rows.push_back({alphas[k], y, pdf_value(models[0], y, time), pdf_value(models[1], y, time),
                        pdf_value(models[2], y, time), emp[0][i], emp[1][i], emp[2][i]});
    }
  }
  return t;
}

constexpr double kFigure3Mu[] = {1.0, 5.0, 10.0};

Table figure3(std::size_t n, std::uint64_t seed, unsigned workers) {
  constexpr double alpha = 0.8, time = 1.0, h = 0.025;
  Table t{"figure3", {{"figure", "3"}, {"t", "1"}, {"lambda", "1"}, {"xi", "1"}, {"alpha", "0.8"},
                      {"mu", "1 5 10"}, {"n", std::to_string(n)}, {"seed", std::to_string(seed)},
                      {"bin_width", str(h)}},
          {"y"}, {}};
  std::vector<double> centres;
  for (std::size_t i = 0; i < 200; ++i) centres.push_back((static_cast<double>(i) + 0.5) * h);
  std::vector<CompoundBirthModel> models;
  for (double mu : kFigure3Mu) {
    models.push_back(make(BernsteinFamily::tempered_stable(alpha, mu), 1.0, 1.0));
    t.columns.push_back("pdf_mu_" + str(mu));
  }
  std::vector<std::vector<double>> emp;
  for (std::size_t f = 0; f < models.size(); ++f) {
    t.columns.push_back("emp_mu_" + str(kFigure3Mu[f]));
    emp.push_back(n ? histogram_density(sample_values(models[f], time, n, substream(seed, f), workers), centres, h)
                    : std::vector<double>(centres.size(), kNaN));
  }
  for (std::size_t i = 0; i < centres.size(); ++i) {
    std::vector<double> row{centres[i]};
    for (const auto& m : models) row.push_back(pdf_value(m, centres[i], time));
    for (const auto& e : emp) row.push_back(e[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<CompoundBirthModel> crossing_models() {
  return {make(BernsteinFamily::linear(), 1.0, 1.0), make(BernsteinFamily::stable(0.5), 1.0, 1.0),
          make(BernsteinFamily::tempered_stable(0.5, 5.0), 1.0, 1.0)};
}

// Fixed t = 1, level on the axis. T_beta < t iff Y(t) > beta, so one sample of
// Y(1) per family gives the empirical curve at every level.
Table figure4(std::size_t n, std::uint64_t seed, unsigned workers) {
  constexpr double time = 1.0;
  Table t{"figure4", {{"figure", "4"}, {"t", "1"}, {"lambda", "1"}, {"xi", "1"}, {"alpha", "0.5"}, {"mu", "5"},
                      {"axis", "beta"}, {"n", std::to_string(n)}, {"seed", std::to_string(seed)}},
          {"beta", "cdf_exp", "cdf_stable", "cdf_tempered", "mc_exp", "mc_stable", "mc_tempered"}, {}};
  const auto models = crossing_models();
  std::vector<std::vector<double>> draws;
  for (std::size_t f = 0; f < models.size(); ++f) {
    auto s = n ? sample_values(models[f], time, n, substream(seed, f), workers) : std::vector<double>{};
    std::sort(s.begin(), s.end());
    draws.push_back(std::move(s));
  }
  for (double beta : linspace(0.05, 10.0, 200)) {
    std::vector<double> row{beta};
    for (const auto& m : models) row.push_back(fpt_cdf(m, beta, time));
    for (const auto& s : draws) {
      if (s.empty()) {
        row.push_back(kNaN);
        continue;
      }
      const auto above = s.end() - std::upper_bound(s.begin(), s.end(), beta);
      row.push_back(static_cast<double>(above) / static_cast<double>(s.size()));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// Fixed level beta = 2, time on the axis; empirical curve from simulated paths.
Table figure5(std::size_t n, std::uint64_t seed, unsigned workers) {
  constexpr double beta = 2.0, horizon = 5.0;
  Table t{"figure5", {{"figure", "5"}, {"beta", "2"}, {"lambda", "1"}, {"xi", "1"}, {"alpha", "0.5"}, {"mu", "5"},
                      {"axis", "t"}, {"n", std::to_string(n)}, {"seed", std::to_string(seed)}},
          {"t", "cdf_exp", "cdf_stable", "cdf_tempered", "mc_exp", "mc_stable", "mc_tempered"}, {}};
  const auto models = crossing_models();
  std::vector<std::optional<EmpiricalCdf>> emp;
  for (std::size_t f = 0; f < models.size(); ++f)
    emp.push_back(n ? std::optional(mc_ruin_time(models[f], 0.0, beta, horizon, n, substream(seed, f), workers))
                    : std::nullopt);
  for (double time : linspace(0.0, horizon, 101)) {
    std::vector<double> row{time};
    for (const auto& m : models) row.push_back(fpt_cdf(m, beta, time));
    // P{T < t}: the empirical cdf counts T <= t, so step just below t.
    for (const auto& e : emp) row.push_back(e ? (*e)(std::nextafter(time, -1.0)) : kNaN);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

Table figure_table(int figure, std::size_t n, std::uint64_t seed, unsigned workers) {
  switch (figure) {
    case 1: return figure1(n, seed, workers);
    case 2: return figure2(n, seed, workers);
    case 3: return figure3(n, seed, workers);
    case 4: return figure4(n, seed, workers);
    case 5: return figure5(n, seed, workers);
    default: throw ConfigError("figure must be 1..5");
  }
}

std::vector<OrderingCheck> figure_orderings(const Table& fig2, const Table& fig3) {
  std::vector<OrderingCheck> out;
  auto at = [](const Table& t, std::size_t col, double alpha_key, double y) {
    // nearest row with matching alpha (figure 2) or any row (figure 3)
    double best = kNaN, dist = std::numeric_limits<double>::infinity();
    const bool keyed = t.columns.front() == "alpha";
    const std::size_t ycol = keyed ? 1 : 0;
    for (const auto& r : t.rows) {
      if (keyed && r[0] != alpha_key) continue;
      if (std::abs(r[ycol] - y) < dist) {
        dist = std::abs(r[ycol] - y);
        best = r[col];
      }
    }
    return best;
  };
  const std::size_t s = fig2.column("pdf_stable"), m = fig2.column("pdf_tempered");
  const double small = 0.1, large = 9.9;
  for (double a : {0.2, 0.5, 0.8}) {
    const std::string tag = "alpha=" + str(a) + ": ";
    out.push_back({tag + "tempered above stable at small y (slower initial fall)", at(fig2, m, a, small) -
                                                                                        at(fig2, s, a, small)});
    out.push_back({tag + "tempered below stable at large y (faster tail fall)", at(fig2, s, a, large) -
                                                                                     at(fig2, m, a, large)});
  }
  const double tail = 4.9;
  for (std::size_t k = 0; k + 1 < std::size(kFigure3Mu); ++k) {
    const std::size_t lo = fig3.column("pdf_mu_" + str(kFigure3Mu[k]));
    const std::size_t hi = fig3.column("pdf_mu_" + str(kFigure3Mu[k + 1]));
    out.push_back({"mu=" + str(kFigure3Mu[k + 1]) + " tail below mu=" + str(kFigure3Mu[k]),
                   at(fig3, lo, 0.0, tail) - at(fig3, hi, 0.0, tail)});
  }
  return out;
}

}  // namespace yulecrack::cli
