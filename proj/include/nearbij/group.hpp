#pragma once

// The group of almost-equality classes of representable near-bijections.
// Two near-bijections are identified when they differ on a finite set, so a
// class is pinned down by its canonical tail; the stored representative
// carries only the exceptions forced by totality, each sent to 0. The index
// descends to classes and is additive under composition, with the classes of
// the two one-sided shifts generating a copy of the integers that splits the
// index off the group.

#include <cstdint>
#include <string>

#include "analysis.hpp"
#include "constructions.hpp"
#include "self_map.hpp"

namespace nearbij {

struct class_rep {
  self_map representative;  // canonical tail, totality exceptions -> 0 only
  std::int64_t class_index = 0;

  bool operator==(const class_rep&) const = default;
};

/// The class of a near-bijection: canonical tail with the minimal exception
/// table (every key the tail would shift below zero, sent to 0).
inline class_rep class_of(const self_map& fin) {
  const self_map f = canonicalize(fin);
  const std::int64_t k = index(f);  // throws unless near-bijective

  std::vector<std::pair<nat, nat>> exc;
  if (f.tail.is_periodic()) {
    for (nat r = 0; r < f.tail.period; ++r) {
      const std::int64_t d = f.tail.offsets[r];
      if (d >= 0) continue;
      for (std::int64_t n = static_cast<std::int64_t>(r); n < -d;
           n += static_cast<std::int64_t>(f.tail.period))
        exc.emplace_back(static_cast<nat>(n), 0);
    }
  }
  return class_rep{canonicalize(self_map{f.tail, std::move(exc)}), k};
}

inline class_rep class_identity() { return class_of(identity_map()); }

inline class_rep class_compose(const class_rep& a, const class_rep& b) {
  return class_of(compose(a.representative, b.representative));
}

inline class_rep class_inverse(const class_rep& a) {
  return class_of(class_inverse(a.representative));
}

/// The index, constant on classes.
inline std::int64_t ind(const class_rep& a) { return a.class_index; }

/// Section of the index: n >= 0 maps to the class of the n-th power of the
/// predecessor shift, n < 0 to that of the successor shift.
inline class_rep splitting(std::int64_t n) {
  if (n >= 0) return class_of(power(predecessor_map(), static_cast<nat>(n)));
  return class_of(power(successor_map(), static_cast<nat>(-n)));
}

/// Kernel membership: the classes of almost-bijective maps are exactly the
/// classes of index zero.
inline bool in_kernel(const class_rep& a) { return a.class_index == 0; }

/// Mutual-inverse test inside the near-injection monoid. When it holds, both
/// maps are necessarily near-bijections; this is re-verified on the spot.
inline bool is_unit_pair(const self_map& fin, const self_map& gin) {
  const self_map f = canonicalize(fin);
  const self_map g = canonicalize(gin);
  const finiteness_result mf = monoset_complement(f);
  if (!mf.is_finite()) throw not_near_injection(mf.witness());
  const finiteness_result mg = monoset_complement(g);
  if (!mg.is_finite()) throw not_near_injection(mg.witness());

  const self_map id = identity_map();
  const bool unit = almost_equal(compose(g, f), id) && almost_equal(compose(f, g), id);
  if (unit && !(classify(f).near_bijective && classify(g).near_bijective))
    throw std::logic_error("mutually inverse near-injections must be near-bijections");
  return unit;
}

/// The splitting image is not central: the adjacent swap and the successor
/// shift disagree after swapping the order of composition on every residue
/// class mod 2.
inline finiteness_result noncentrality_demo() {
  const self_map u = successor_map();
  const self_map swap = adjacent_swap();
  return disagreement(compose(swap, u), compose(u, swap));
}

}  // namespace nearbij
