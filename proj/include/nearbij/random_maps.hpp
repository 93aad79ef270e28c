#pragma once

// Seeded generators of representable maps for randomized verification:
// near-bijections with a residue-permuting tail, maps pinned to a target
// index, and true permutations / surjections / injections obtained through
// the constructive reductions.

#include <cstdint>
#include <random>
#include <vector>

#include "constructions.hpp"
#include "finite_oracle.hpp"
#include "self_map.hpp"

namespace nearbij {

struct map_gen_params {
  nat max_period = 6;
  std::int64_t max_offset = 5;  // |offset| bound when achievable
  nat max_exceptions = 8;
  nat key_range = 40;
  nat value_range = 40;
};

using rng_engine = std::mt19937_64;

namespace detail {

inline std::vector<std::int64_t> random_residue_permutation_offsets(
    rng_engine& rng, nat period, std::int64_t max_offset,
    std::int64_t target_lift_sum /* sum of the per-residue period multiples */) {
  std::vector<nat> image(period);
  for (nat r = 0; r < period; ++r) image[r] = r;
  std::shuffle(image.begin(), image.end(), rng);

  const std::int64_t p = static_cast<std::int64_t>(period);
  std::vector<std::int64_t> base(period);
  for (nat r = 0; r < period; ++r)
    base[r] = static_cast<std::int64_t>(image[r]) - static_cast<std::int64_t>(r);

  // Lift each residue image by a multiple of the period; the lifts control
  // the offset sum and hence the index.
  std::vector<std::int64_t> lift(period, 0);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::int64_t sum = 0;
    for (nat r = 0; r < period; ++r) {
      const std::int64_t lo = -((max_offset + base[r]) / p);
      const std::int64_t hi = (max_offset - base[r]) / p;
      std::uniform_int_distribution<std::int64_t> dist(std::min(lo, std::int64_t{0}),
                                                       std::max(hi, std::int64_t{0}));
      lift[r] = dist(rng);
      sum += lift[r];
    }
    if (sum == target_lift_sum) {
      std::vector<std::int64_t> offsets(period);
      for (nat r = 0; r < period; ++r) offsets[r] = base[r] + p * lift[r];
      return offsets;
    }
  }

  // Deterministic fallback: put the whole target on residue 0.
  std::vector<std::int64_t> offsets(period);
  for (nat r = 0; r < period; ++r) offsets[r] = base[r];
  offsets[0] += p * target_lift_sum;
  return offsets;
}

inline self_map attach_random_exceptions(rng_engine& rng, tail_spec tail,
                                         const map_gen_params& params) {
  std::uniform_int_distribution<nat> count_dist(0, params.max_exceptions);
  std::uniform_int_distribution<nat> key_dist(0, params.key_range - 1);
  std::uniform_int_distribution<nat> value_dist(0, params.value_range - 1);

  std::vector<std::pair<nat, nat>> exc;
  const auto has_key = [&exc](nat k) {
    for (const auto& [key, value] : exc)
      if (key == k) return true;
    return false;
  };

  const nat count = count_dist(rng);
  for (nat i = 0; i < count; ++i) {
    const nat k = key_dist(rng);
    if (!has_key(k)) exc.emplace_back(k, value_dist(rng));
  }

  // Patch totality: keys the tail would shift below zero get random values.
  if (tail.is_periodic())
    for (nat r = 0; r < tail.period; ++r) {
      const std::int64_t d = tail.offsets[r];
      if (d >= 0) continue;
      for (std::int64_t n = static_cast<std::int64_t>(r); n < -d;
           n += static_cast<std::int64_t>(tail.period))
        if (!has_key(static_cast<nat>(n)))
          exc.emplace_back(static_cast<nat>(n), value_dist(rng));
    }

  return canonicalize(self_map{std::move(tail), std::move(exc)});
}

}  // namespace detail

/// A random near-bijection: residue-permuting periodic tail plus random
/// exceptions. The index is not pinned.
inline self_map random_near_bijection(rng_engine& rng,
                                      const map_gen_params& params = {}) {
  std::uniform_int_distribution<nat> period_dist(1, params.max_period);
  const nat p = period_dist(rng);
  std::uniform_int_distribution<std::int64_t> lift_sum_dist(-2, 2);
  auto offsets = detail::random_residue_permutation_offsets(rng, p, params.max_offset,
                                                            lift_sum_dist(rng));
  return detail::attach_random_exceptions(rng, tail_spec::periodic(p, std::move(offsets)),
                                          params);
}

/// A random near-bijection with the given index.
inline self_map random_map_with_index(rng_engine& rng, std::int64_t target_index,
                                      const map_gen_params& params = {}) {
  std::uniform_int_distribution<nat> period_dist(1, params.max_period);
  const nat p = period_dist(rng);
  auto offsets = detail::random_residue_permutation_offsets(rng, p, params.max_offset,
                                                            -target_index);
  return detail::attach_random_exceptions(rng, tail_spec::periodic(p, std::move(offsets)),
                                          params);
}

inline self_map random_index_zero_map(rng_engine& rng,
                                      const map_gen_params& params = {}) {
  return random_map_with_index(rng, 0, params);
}

/// A random representable permutation (both complements empty).
inline self_map random_permutation_map(rng_engine& rng,
                                       const map_gen_params& params = {}) {
  return repair_to_bijection(random_index_zero_map(rng, params));
}

/// A random representable surjection with the given nonnegative index.
inline self_map random_surjection_map(rng_engine& rng, std::int64_t target_index = 1,
                                      const map_gen_params& params = {}) {
  return reduce_to_surjection(random_map_with_index(rng, target_index, params));
}

/// A random representable injection with the given nonpositive index.
inline self_map random_injection_map(rng_engine& rng, std::int64_t target_index = -1,
                                     const map_gen_params& params = {}) {
  return reduce_to_injection(random_map_with_index(rng, target_index, params));
}

inline finite_self_map random_finite_map(rng_engine& rng, nat size) {
  std::uniform_int_distribution<nat> value_dist(0, size - 1);
  finite_self_map m;
  m.size = size;
  m.table.resize(size);
  for (nat i = 0; i < size; ++i) m.table[i] = value_dist(rng);
  return m;
}

}  // namespace nearbij
