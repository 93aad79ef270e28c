#pragma once

// Range and monoset analysis for representable self-maps: the finite-or-
// infinite complements, the near-injection/near-surjection/near-bijection
// predicates, and the integer index of a near-bijection.
//
// For a periodic tail everything is decided by the induced residue shift
// r -> (r + d_r) mod p. When that map permutes the residues, the self-map is
// injective beyond its stability window and attains every value beyond it,
// so both complements live inside [0, W) and are computed there exactly.
// When it does not permute the residues, whole residue classes collide (or
// go unattained), and the verdict is infinite with an explicit witness.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "self_map.hpp"

namespace nearbij {

class not_near_injection : public precondition_error {
 public:
  explicit not_near_injection(const infinite_witness& w)
      : precondition_error("not near-injective: monoset complement infinite, witness " +
                           describe(w)),
        witness_(w) {}
  const infinite_witness& witness() const noexcept { return witness_; }

 private:
  infinite_witness witness_;
};

class not_near_bijection : public precondition_error {
 public:
  explicit not_near_bijection(std::string what) : precondition_error(std::move(what)) {}
};

namespace detail {

struct residue_shift_info {
  bool permutation = false;
  nat collide_a = 0, collide_b = 0;  // two residues with the same image (if any)
  nat uncovered = 0;                 // a residue no class shifts onto (if any)
};

inline residue_shift_info analyze_residue_shift(const tail_spec& t) {
  residue_shift_info info;
  const nat p = t.period;
  const std::int64_t q = static_cast<std::int64_t>(p);
  std::vector<std::optional<nat>> source(p);
  info.permutation = true;
  for (nat r = 0; r < p; ++r) {
    const std::int64_t s = static_cast<std::int64_t>(r) + t.offsets[r];
    const nat image = static_cast<nat>(((s % q) + q) % q);
    if (source[image]) {
      if (info.permutation) {
        info.permutation = false;
        info.collide_a = std::min(*source[image], r);
        info.collide_b = std::max(*source[image], r);
      }
    } else {
      source[image] = r;
    }
  }
  if (!info.permutation)
    for (nat s = 0; s < p; ++s)
      if (!source[s]) {
        info.uncovered = s;
        break;
      }
  return info;
}

}  // namespace detail

/// Complement of the monoset: the points sharing their value with another
/// point. Finite exactly when the residue shift permutes the residues.
inline finiteness_result monoset_complement(const self_map& fin) {
  const self_map f = canonicalize(fin);
  if (f.tail.is_constant())
    return finiteness_result::infinite(
        {1, {0}, "constant tail: all sufficiently large points share one value"});

  const auto info = detail::analyze_residue_shift(f.tail);
  if (!info.permutation)
    return finiteness_result::infinite(
        {f.tail.period,
         {info.collide_a, info.collide_b},
         "residues " + std::to_string(info.collide_a) + " and " +
             std::to_string(info.collide_b) + " collide under the residue shift"});

  const nat w = stability_window(f);
  std::vector<nat> out;
  for (nat n = 0; n < w; ++n)
    if (preimage(f, evaluate(f, n)).elements().size() >= 2) out.push_back(n);
  return finiteness_result::finite(std::move(out));
}

/// Complement of the range: the values never attained.
inline finiteness_result range_complement(const self_map& fin) {
  const self_map f = canonicalize(fin);
  if (f.tail.is_constant())
    return finiteness_result::infinite({1, {0}, "constant tail: the range is finite"});

  const auto info = detail::analyze_residue_shift(f.tail);
  if (!info.permutation)
    return finiteness_result::infinite(
        {f.tail.period,
         {info.uncovered},
         "no residue shifts onto residue " + std::to_string(info.uncovered)});

  const nat w = stability_window(f);
  std::vector<nat> out;
  for (nat m = 0; m < w; ++m)
    if (preimage(f, m).elements().empty()) out.push_back(m);
  return finiteness_result::finite(std::move(out));
}

struct map_profile {
  finiteness_result monoset_complement;
  finiteness_result range_complement;
  std::vector<nat> image_of_monoset_complement;  // meaningful iff monoset finite
  std::optional<std::int64_t> index;             // present iff both finite
};

inline map_profile profile(const self_map& fin) {
  const self_map f = canonicalize(fin);
  map_profile p{monoset_complement(f), range_complement(f), {}, std::nullopt};
  if (p.monoset_complement.is_finite()) {
    std::vector<nat> image;
    for (nat n : p.monoset_complement.elements()) image.push_back(evaluate(f, n));
    p.image_of_monoset_complement = detail::sorted_unique(std::move(image));
  }
  if (p.monoset_complement.is_finite() && p.range_complement.is_finite()) {
    const auto sz = [](const std::vector<nat>& v) {
      return static_cast<std::int64_t>(v.size());
    };
    p.index = (sz(p.monoset_complement.elements()) -
               sz(p.image_of_monoset_complement)) -
              sz(p.range_complement.elements());
  }
  return p;
}

struct classification {
  bool near_injective = false;
  bool near_surjective = false;
  bool near_bijective = false;
  bool injective = false;
  bool surjective = false;
};

inline classification classify(const self_map& f) {
  const map_profile p = profile(f);
  classification c;
  c.near_injective = p.monoset_complement.is_finite();
  c.near_surjective = p.range_complement.is_finite();
  c.near_bijective = c.near_injective && c.near_surjective;
  c.injective = c.near_injective && p.monoset_complement.elements().empty();
  c.surjective = c.near_surjective && p.range_complement.elements().empty();
  return c;
}

namespace detail {

[[noreturn]] inline void throw_not_near_bijection(const map_profile& p) {
  if (!p.monoset_complement.is_finite())
    throw not_near_bijection("not near-injective: monoset complement infinite, witness " +
                             describe(p.monoset_complement.witness()));
  throw not_near_bijection("not near-surjective: range complement infinite, witness " +
                           describe(p.range_complement.witness()));
}

}  // namespace detail

/// The index of a near-bijection:
///   (|monoset complement| - |its image|) - |range complement|.
inline std::int64_t index(const self_map& f) {
  const map_profile p = profile(f);
  if (!p.index) detail::throw_not_near_bijection(p);
  return *p.index;
}

/// Second route to the same integer, straight from the tail: minus the mean
/// offset. The offset sum of a residue-permuting tail is divisible by the
/// period, and exceptions never move the index.
inline std::int64_t tail_index(const self_map& fin) {
  const self_map f = canonicalize(fin);
  if (f.tail.is_constant() || !detail::analyze_residue_shift(f.tail).permutation)
    detail::throw_not_near_bijection(profile(f));
  std::int64_t sum = 0;
  for (std::int64_t d : f.tail.offsets) sum += d;
  const std::int64_t p = static_cast<std::int64_t>(f.tail.period);
  if (sum % p != 0)
    throw std::logic_error("offset sum of a residue-permuting tail not divisible by the period");
  return -(sum / p);
}

/// Self-check of the image identity: the pointwise image of the monoset
/// complement equals (range minus image of monoset), the latter computed by
/// an independent fibre-size scan over the stability window.
inline bool image_identity_check(const self_map& fin) {
  const self_map f = canonicalize(fin);
  const map_profile p = profile(f);
  if (!p.index) detail::throw_not_near_bijection(p);

  const std::vector<nat>& lhs = p.image_of_monoset_complement;
  std::int64_t bound = static_cast<std::int64_t>(stability_window(f));
  for (nat v : lhs) bound = std::max(bound, static_cast<std::int64_t>(v) + 1);

  std::vector<nat> rhs;
  for (std::int64_t m = 0; m < bound; ++m)
    if (preimage(f, static_cast<nat>(m)).elements().size() >= 2)
      rhs.push_back(static_cast<nat>(m));
  return lhs == rhs;
}

/// The monoset complement split into fibres: value -> the full preimage of
/// that value. Fibres are disjoint, each of size >= 2, and cover the
/// complement exactly.
inline std::vector<std::pair<nat, std::vector<nat>>> fiber_decomposition(
    const self_map& fin) {
  const self_map f = canonicalize(fin);
  const finiteness_result mono = monoset_complement(f);
  if (!mono.is_finite()) throw not_near_injection(mono.witness());

  std::vector<nat> values;
  for (nat n : mono.elements()) values.push_back(evaluate(f, n));
  values = detail::sorted_unique(std::move(values));

  std::vector<std::pair<nat, std::vector<nat>>> fibers;
  std::vector<nat> covered;
  for (nat v : values) {
    std::vector<nat> fiber = preimage(f, v).elements();
    if (fiber.size() < 2)
      throw std::logic_error("fiber over a shared value has fewer than two points");
    covered.insert(covered.end(), fiber.begin(), fiber.end());
    fibers.emplace_back(v, std::move(fiber));
  }
  if (detail::sorted_unique(covered) != mono.elements() ||
      covered.size() != mono.elements().size())
    throw std::logic_error("fibers do not partition the monoset complement");
  return fibers;
}

}  // namespace nearbij
