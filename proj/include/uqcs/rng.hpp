#pragma once

#include <cstdint>
#include <initializer_list>

#include <boost/random/mersenne_twister.hpp>

#include "uqcs/linalg.hpp"

namespace uqcs {

using Rng = boost::random::mt19937_64;

// Seed for an independent stream identified by (master, keys...). The
// same keys always give the same stream, so sampled values do not depend on
// the order in which streams are consumed.
std::uint64_t stream_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
Complex complex_normal(Rng& rng, double variance);

double standard_normal(Rng& rng);

// Mean of `shots` +-1 outcomes with P(+1) = (1 + value) / 2, |value| <= 1.
double binomial_mean(Rng& rng, double value, long shots);

}  // namespace uqcs
