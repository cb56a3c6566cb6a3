#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace yulecrack {

/// A reproducible random stream. Identical (seed, stream_id) pairs produce
/// identical draw sequences; distinct stream ids are statistically independent.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint32_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream_id,
                      0x9e3779b9u};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint32_t stream_id() const { return stream_id_; }
  std::mt19937_64& engine() { return engine_; }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    double u;
    do {
      u = std::generate_canonical<double, 53>(engine_);
    } while (u <= 0.0);
    return u;
  }

  double exponential(double rate) { return std::exponential_distribution<double>(rate)(engine_); }

  /// Gamma variate with the given shape and rate; shape 0 gives 0.
  double gamma(double shape, double rate) {
    if (shape <= 0.0) return 0.0;
    return std::gamma_distribution<double>(shape, 1.0 / rate)(engine_);
  }

  std::int64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<std::int64_t>(mean)(engine_);
  }

  /// Number of failures before the first success.
  std::int64_t geometric(double success_prob) {
    if (success_prob >= 1.0) return 0;
    return std::geometric_distribution<std::int64_t>(success_prob)(engine_);
  }

 private:
  std::uint64_t seed_;
  std::uint32_t stream_id_;
  std::mt19937_64 engine_;
};

/// Draws `n` values split over `workers` threads. Worker w owns
/// RngStream(seed, w) and produces a contiguous block; blocks are concatenated
/// in worker order, so the result depends only on (seed, workers).
inline std::vector<double> parallel_draws(std::size_t n, std::uint64_t seed, unsigned workers,
                                          const std::function<double(RngStream&)>& draw) {
  if (workers == 0) workers = 1;
  std::vector<double> out(n);
  const std::size_t block = n / workers;
  const std::size_t extra = n % workers;
  std::vector<std::exception_ptr> failures(workers);
  auto run = [&](unsigned w, std::size_t begin, std::size_t count) {
    try {
      RngStream rng(seed, w);
      for (std::size_t i = 0; i < count; ++i) out[begin + i] = draw(rng);
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0, 0, n);
    if (failures[0]) std::rethrow_exception(failures[0]);
    return out;
  }
  std::vector<std::thread> pool;
  std::size_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t count = block + (w < extra ? 1 : 0);
    pool.emplace_back(run, w, begin, count);
    begin += count;
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return out;
}

}  // namespace yulecrack
