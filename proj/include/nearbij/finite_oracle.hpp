#pragma once

// Brute-force ground truth. Everything here is computed by plain enumeration
// over a finite carrier {0, ..., n-1} or over a padded window of the
// naturals, with none of the residue-shift shortcuts the analysis module
// uses. The test suites compare the two throughout.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "self_map.hpp"

namespace nearbij {

/// An arbitrary self-map of {0, ..., size-1} given by its value table.
struct finite_self_map {
  nat size = 0;
  std::vector<nat> table;

  bool operator==(const finite_self_map&) const = default;
};

inline void validate(const finite_self_map& m) {
  if (m.size == 0 || m.table.size() != m.size)
    throw std::invalid_argument("finite_self_map: table length must equal size >= 1");
  for (nat v : m.table)
    if (v >= m.size)
      throw std::invalid_argument("finite_self_map: table entry out of range");
}

struct finite_profile {
  std::vector<nat> monoset_complement;
  std::vector<nat> range_complement;
  std::vector<nat> image_of_monoset_complement;
};

inline finite_profile oracle_profile(const finite_self_map& m) {
  validate(m);
  finite_profile p;
  std::vector<nat> fiber_size(m.size, 0);
  for (nat v : m.table) ++fiber_size[v];
  for (nat i = 0; i < m.size; ++i)
    if (fiber_size[m.table[i]] >= 2) p.monoset_complement.push_back(i);
  for (nat v = 0; v < m.size; ++v)
    if (fiber_size[v] == 0) p.range_complement.push_back(v);
  for (nat i : p.monoset_complement) p.image_of_monoset_complement.push_back(m.table[i]);
  p.image_of_monoset_complement = detail::sorted_unique(std::move(p.image_of_monoset_complement));
  return p;
}

/// |monoset complement| - |its image| = |range complement| on any finite carrier.
inline bool check_finite_identity(const finite_self_map& m) {
  const finite_profile p = oracle_profile(m);
  return p.monoset_complement.size() - p.image_of_monoset_complement.size() ==
         p.range_complement.size();
}

/// f(carrier minus monoset) = f(carrier) minus f(monoset), by full enumeration.
inline bool check_comp_identity(const finite_self_map& m) {
  validate(m);
  std::vector<nat> fiber_size(m.size, 0);
  for (nat v : m.table) ++fiber_size[v];

  std::vector<nat> lhs;  // image of the monoset complement
  for (nat i = 0; i < m.size; ++i)
    if (fiber_size[m.table[i]] >= 2) lhs.push_back(m.table[i]);
  lhs = detail::sorted_unique(std::move(lhs));

  std::vector<nat> range, image_of_monoset;
  for (nat i = 0; i < m.size; ++i) {
    range.push_back(m.table[i]);
    if (fiber_size[m.table[i]] == 1) image_of_monoset.push_back(m.table[i]);
  }
  range = detail::sorted_unique(std::move(range));
  image_of_monoset = detail::sorted_unique(std::move(image_of_monoset));
  std::vector<nat> rhs;
  std::set_difference(range.begin(), range.end(), image_of_monoset.begin(),
                      image_of_monoset.end(), std::back_inserter(rhs));
  return lhs == rhs;
}

/// Bookkeeping for a one-point edit, replaying the four-way case split on
/// whether the new value was already attained and whether the edited point
/// sat in the monoset. Each case pins exact deltas for the complement sizes.
struct edit_check {
  bool ok = false;
  std::string case_tag;               // "noop", "i", "ii", "iii", "iv"
  std::int64_t delta_range_complement = 0;
  std::int64_t delta_monoset_complement = 0;
  std::int64_t delta_image_of_monoset_complement = 0;

  explicit operator bool() const noexcept { return ok; }
};

inline edit_check check_edit_invariance(const finite_self_map& m, nat point,
                                        nat new_value) {
  validate(m);
  if (point >= m.size || new_value >= m.size)
    throw std::invalid_argument("check_edit_invariance: edit out of range");

  finite_self_map edited = m;
  edited.table[point] = new_value;

  const finite_profile before = oracle_profile(m);
  const finite_profile after = oracle_profile(edited);

  edit_check r;
  const auto sz = [](const std::vector<nat>& v) { return static_cast<std::int64_t>(v.size()); };
  r.delta_range_complement = sz(after.range_complement) - sz(before.range_complement);
  r.delta_monoset_complement = sz(after.monoset_complement) - sz(before.monoset_complement);
  r.delta_image_of_monoset_complement =
      sz(after.image_of_monoset_complement) - sz(before.image_of_monoset_complement);

  const bool identity_kept = check_finite_identity(m) && check_finite_identity(edited);

  if (new_value == m.table[point]) {
    r.case_tag = "noop";
    r.ok = identity_kept && r.delta_range_complement == 0 &&
           r.delta_monoset_complement == 0 && r.delta_image_of_monoset_complement == 0;
    return r;
  }

  nat old_fiber = 0, new_value_fiber = 0;
  for (nat v : m.table) {
    if (v == m.table[point]) ++old_fiber;
    if (v == new_value) ++new_value_fiber;
  }
  const bool value_attained = new_value_fiber > 0;
  const bool point_in_monoset = old_fiber == 1;

  std::int64_t want_mono = 0, want_image = 0, want_range = 0;
  if (!value_attained && point_in_monoset) {
    r.case_tag = "i";
    want_range = 0;
    want_mono = 0;
    want_image = 0;
    // The monoset complement must be unchanged as a set, not just in size.
    if (before.monoset_complement != after.monoset_complement) {
      r.ok = false;
      return r;
    }
  } else if (!value_attained && !point_in_monoset) {
    r.case_tag = "ii";
    want_range = -1;
    if (old_fiber == 2) {
      want_mono = -2;
      want_image = -1;
    } else {
      want_mono = -1;
      want_image = 0;
    }
  } else if (value_attained && point_in_monoset) {
    r.case_tag = "iii";
    want_range = +1;
    if (new_value_fiber == 1) {  // the prior preimage of the new value was monoset
      want_mono = +2;
      want_image = +1;
    } else {
      want_mono = +1;
      want_image = 0;
    }
  } else {
    r.case_tag = "iv";
    want_range = 0;
    const bool fiber_pair = old_fiber == 2;
    const bool other_in_monoset = new_value_fiber == 1;
    if (fiber_pair && other_in_monoset) {
      want_mono = 0;
      want_image = 0;
    } else if (fiber_pair && !other_in_monoset) {
      want_mono = -1;
      want_image = -1;
    } else if (!fiber_pair && other_in_monoset) {
      want_mono = +1;
      want_image = +1;
    } else {
      want_mono = 0;
      want_image = 0;
    }
  }

  r.ok = identity_kept && r.delta_range_complement == want_range &&
         r.delta_monoset_complement == want_mono &&
         r.delta_image_of_monoset_complement == want_image;
  return r;
}

/// On a finite carrier, injective and surjective coincide.
inline bool check_inj_iff_surj(const finite_self_map& m) {
  const finite_profile p = oracle_profile(m);
  return p.monoset_complement.empty() == p.range_complement.empty();
}

// ---------------------------------------------------------------------------
// Windowed naive scans of representable maps. These evaluate pointwise over
// a padded window and never consult the residue-shift analysis; for a
// near-bijective map and bound >= 4 W they reproduce the exact complements.

struct window_profile {
  std::vector<nat> monoset_complement;  // restricted to [0, bound)
  std::vector<nat> range_complement;    // restricted to [0, bound)
};

inline window_profile window_scan_profile(const self_map& fin, nat bound) {
  const self_map f = canonicalize(fin);
  const nat pad = bound + stability_window(f);

  std::vector<nat> values(pad);
  for (nat n = 0; n < pad; ++n) values[n] = evaluate(f, n);

  std::vector<nat> value_count;
  for (nat n = 0; n < pad; ++n) {
    if (values[n] >= value_count.size()) value_count.resize(values[n] + 1, 0);
    ++value_count[values[n]];
  }

  window_profile p;
  for (nat n = 0; n < bound; ++n)
    if (value_count[values[n]] >= 2) p.monoset_complement.push_back(n);
  for (nat v = 0; v < bound; ++v)
    if (v >= value_count.size() || value_count[v] == 0) p.range_complement.push_back(v);
  return p;
}

}  // namespace nearbij
