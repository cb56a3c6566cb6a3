#include "yulecrack/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>

#include "yulecrack/error.hpp"

namespace yulecrack::stats {
namespace {

constexpr std::size_t kMinSamples = 100;
constexpr double kMinExpected = 5.0;

double ks_p_value(double d, double n_eff) {
  const double rn = std::sqrt(n_eff);
  return kolmogorov_q((rn + 0.12 + 0.11 / rn) * d);
}

double chi_square_p(double stat, std::size_t dof) {
  if (dof == 0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(static_cast<double>(dof)), stat));
}

// Merges cells left to right until each expected count reaches the threshold.
void merge_cells(std::vector<double>& observed, std::vector<double>& expected) {
  std::vector<double> obs, exp;
  double o = 0.0, e = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    o += observed[i];
    e += expected[i];
    if (e >= kMinExpected) {
      obs.push_back(o);
      exp.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp.empty()) {
      obs.push_back(o);
      exp.push_back(e);
    } else {
      obs.back() += o;
      exp.back() += e;
    }
  }
  observed = std::move(obs);
  expected = std::move(exp);
}

}  // namespace

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf, const KsOptions& opt) {
  const std::size_t n = samples.size();
  if (n < kMinSamples) throw DomainError("ks_test: at least 100 samples required");
  std::sort(samples.begin(), samples.end());
  const auto& left = opt.left_cdf ? opt.left_cdf : cdf;
  const double nn = static_cast<double>(n);
  double d = 0.0;
  std::size_t i = 0;
  while (i < n && samples[i] < opt.cutoff) {
    std::size_t j = i;
    while (j < n && samples[j] == samples[i]) ++j;
    const double x = samples[i];
    d = std::max({d, std::abs(static_cast<double>(j) / nn - cdf(x)), std::abs(left(x) - static_cast<double>(i) / nn)});
    i = j;
  }
  // Gap between the last observation and the cutoff.
  if (std::isfinite(opt.cutoff)) d = std::max(d, std::abs(left(opt.cutoff) - static_cast<double>(i) / nn));
  const double p = ks_p_value(d, nn);
  return {"ks", d, p, opt.level, p >= opt.level};
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b, double level) {
  if (a.size() < kMinSamples || b.size() < kMinSamples) throw DomainError("ks_two_sample: at least 100 samples each");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double p = ks_p_value(d, na * nb / (na + nb));
  return {"ks2", d, p, level, p >= level};
}

TestResult chi_square_test(const std::vector<std::int64_t>& samples, const std::function<double(std::int64_t)>& pmf,
                           std::int64_t support_min, double level) {
  if (samples.size() < kMinSamples) throw DomainError("chi_square_test: at least 100 samples required");
  const auto top = *std::max_element(samples.begin(), samples.end());
  if (*std::min_element(samples.begin(), samples.end()) < support_min)
    throw DomainError("chi_square_test: sample below the support");
  const double n = static_cast<double>(samples.size());
  const std::size_t cells = static_cast<std::size_t>(top - support_min) + 2;  // last cell: tail > top
  std::vector<double> observed(cells, 0.0), expected(cells, 0.0);
  for (auto s : samples) observed[static_cast<std::size_t>(s - support_min)] += 1.0;
  double mass = 0.0;
  for (std::size_t c = 0; c + 1 < cells; ++c) {
    const double p = pmf(support_min + static_cast<std::int64_t>(c));
    expected[c] = n * p;
    mass += p;
  }
  expected[cells - 1] = n * std::max(0.0, 1.0 - mass);
  merge_cells(observed, expected);
  double stat = 0.0;
  for (std::size_t c = 0; c < observed.size(); ++c) {
    const double diff = observed[c] - expected[c];
    stat += diff * diff / expected[c];
  }
  const std::size_t dof = observed.size() > 1 ? observed.size() - 1 : 0;
  const double p = chi_square_p(stat, dof);
  return {"chi2", stat, p, level, p >= level, dof};
}

TestResult chi_square_two_sample(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                 double level) {
  if (a.size() < kMinSamples || b.size() < kMinSamples)
    throw DomainError("chi_square_two_sample: at least 100 samples each");
  std::map<std::int64_t, std::pair<double, double>> table;
  for (auto v : a) table[v].first += 1.0;
  for (auto v : b) table[v].second += 1.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double share_a = na / (na + nb), share_b = nb / (na + nb);
  // Merge on the smaller expected share so both rows clear the threshold.
  const double min_share = std::min(share_a, share_b);
  std::vector<std::pair<double, double>> cells;
  std::pair<double, double> acc{0.0, 0.0};
  for (const auto& [k, c] : table) {
    acc.first += c.first;
    acc.second += c.second;
    if ((acc.first + acc.second) * min_share >= kMinExpected) {
      cells.push_back(acc);
      acc = {0.0, 0.0};
    }
  }
  if (acc.first + acc.second > 0.0) {
    if (cells.empty())
      cells.push_back(acc);
    else {
      cells.back().first += acc.first;
      cells.back().second += acc.second;
    }
  }
  double stat = 0.0;
  for (const auto& [oa, ob] : cells) {
    const double tot = oa + ob;
    const double ea = tot * share_a, eb = tot * share_b;
    stat += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  const std::size_t dof = cells.size() > 1 ? cells.size() - 1 : 0;
  const double p = chi_square_p(stat, dof);
  return {"chi2-2", stat, p, level, p >= level, dof};
}

MeanEstimate mean_estimate(const std::vector<double>& x) {
  detail::require(x.size() >= 2, "mean_estimate: need at least two values");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(x.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(x.size()))};
}

}  // namespace yulecrack::stats
