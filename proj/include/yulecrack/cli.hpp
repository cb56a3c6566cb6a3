#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "yulecrack/compound.hpp"

namespace yulecrack::cli {

inline constexpr std::uint64_t kDefaultSeed = 12345;
inline constexpr unsigned kDefaultWorkers = 4;
inline constexpr int kCsvSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kBadConfig = 2, kIoFailure = 3 };

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Family tag plus parameters. Tags: exp, stable, tempered, gamma, poisson.
struct ModelSpec {
  std::string family = "exp";
  double lambda = 1.0;
  double xi = 1.0;
  double alpha = 0.5;
  double mu = 1.0;
  double b = 1.0;
  std::optional<double> kappa;  ///< defaults to lambda

  /// Throws ConfigError for an unknown tag or out-of-range parameters.
  CompoundBirthModel model() const;
};

struct RunConfig {
  std::string command;
  ModelSpec spec;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = kDefaultWorkers;
  std::string output;  ///< empty: standard output
  std::string format = "csv";
  std::string svg;  ///< empty: no plot

  // simulate
  double t = 1.0;
  std::size_t n = 100000;
  std::optional<double> horizon;  ///< set: emit paths on [0, horizon]

  // pdf / fpt tabulation
  double from = 0.0;
  double to = 5.0;
  std::size_t points = 200;
  double beta = 2.0;
  std::string axis = "t";  ///< fpt: "t" (fixed beta) or "beta" (fixed t)

  // verify
  std::string suite = "all";
  bool quick = false;

  // reproduce
  int figure = 1;
};

/// Rectangular numeric table with string metadata; the CSV/JSON unit of output.
struct Table {
  Table(std::string kind, std::vector<std::pair<std::string, std::string>> meta, std::vector<std::string> columns,
        std::vector<std::vector<double>> rows)
      : kind(std::move(kind)), meta(std::move(meta)), columns(std::move(columns)), rows(std::move(rows)) {}

  std::string kind;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Plot axis; a group column splits rows into one curve set per value.
  std::size_t x_column = 0;
  std::optional<std::size_t> group_column;

  std::size_t column(const std::string& name) const;
};

/// CSV: a schema comment "# yulecrack-<kind> v1", one "# key=value" comment
/// per metadata entry, the header row, then rows at 17 significant digits.
void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);
/// Line plot of every column against the first; NaN values break the line.
void write_svg(std::ostream& os, const Table& t, const std::string& title);
std::string format_number(double v);

Table cmd_simulate(const RunConfig& c);
Table cmd_pdf(const RunConfig& c);
Table cmd_fpt(const RunConfig& c);
Table cmd_reproduce(const RunConfig& c);

struct Check {
  std::string name;
  bool passed;
  std::vector<std::pair<std::string, double>> metrics;
  std::string note;
};

struct VerifyReport {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
};

/// Suites: pde, laplace, relaxation, discrete, timechange, fpt, all. The
/// family-specific suites use c.spec; "all" runs its own fixed parameter sets.
VerifyReport cmd_verify(const RunConfig& c);
void write_report(std::ostream& os, const VerifyReport& r);

/// Figure parameter sets.
Table figure_table(int figure, std::size_t n, std::uint64_t seed, unsigned workers);

/// Ordering claims of Figures 2 and 3 as sign conditions on curve differences.
struct OrderingCheck {
  std::string claim;
  double difference;  ///< positive when the claim holds
};
std::vector<OrderingCheck> figure_orderings(const Table& fig2, const Table& fig3);

/// Entry point; returns the process exit code. Seed precedence: --seed, the
/// config file, YULECRACK_SEED, kDefaultSeed.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace yulecrack::cli
