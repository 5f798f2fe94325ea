#include "uqcs/rng.hpp"

#include <algorithm>
#include <cmath>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace uqcs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  return Rng(stream_seed(master, keys));
}

double standard_normal(Rng& rng) {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

Complex complex_normal(Rng& rng, double variance) {
  const double s = std::sqrt(0.5 * variance);
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  const double re = dist(rng);
  const double im = dist(rng);
  return {s * re, s * im};
}

double binomial_mean(Rng& rng, double value, long shots) {
  const double p = std::clamp(0.5 * (1.0 + value), 0.0, 1.0);
  boost::random::binomial_distribution<long, double> dist(shots, p);
  const long k = dist(rng);
  return 2.0 * static_cast<double>(k) / static_cast<double>(shots) - 1.0;
}

}  // namespace uqcs
