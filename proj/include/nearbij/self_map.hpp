#pragma once

// Self-maps of the naturals with finitely representable eventual behaviour:
// an eventually periodic family of shift offsets, or an eventually constant
// value, plus a finite exception table. The class is closed under
// composition and contains the identity, both one-sided shifts and every
// finitely supported permutation.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nearbij {

using nat = std::uint64_t;

/// Raised when an operation's documented precondition does not hold.
class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A periodic tail that shifts some key below zero must carry an exception
/// for that key; otherwise the map is not total.
class totality_error : public precondition_error {
 public:
  explicit totality_error(std::vector<nat> keys)
      : precondition_error(format(keys)), missing_(std::move(keys)) {}

  const std::vector<nat>& missing_keys() const noexcept { return missing_; }

 private:
  static std::string format(const std::vector<nat>& keys) {
    std::string msg = "totality violation: tail is negative at key(s)";
    for (nat k : keys) msg += " " + std::to_string(k);
    msg += " without an exception entry";
    return msg;
  }

  std::vector<nat> missing_;
};

// ---------------------------------------------------------------------------
// Tail: the eventual rule of a map.

struct tail_spec {
  enum class kind_type { periodic, constant };

  kind_type kind = kind_type::periodic;
  nat period = 1;                               // periodic only, >= 1
  std::vector<std::int64_t> offsets = {0};      // periodic only, one per residue
  nat value = 0;                                // constant only

  static tail_spec periodic(nat period, std::vector<std::int64_t> offsets) {
    if (period == 0 || offsets.size() != period)
      throw std::invalid_argument(
          "periodic tail requires period >= 1 and exactly one offset per residue");
    tail_spec t;
    t.kind = kind_type::periodic;
    t.period = period;
    t.offsets = std::move(offsets);
    t.value = 0;
    return t;
  }

  static tail_spec constant(nat value) {
    tail_spec t;
    t.kind = kind_type::constant;
    t.period = 0;
    t.offsets.clear();
    t.value = value;
    return t;
  }

  bool is_periodic() const noexcept { return kind == kind_type::periodic; }
  bool is_constant() const noexcept { return kind == kind_type::constant; }

  bool operator==(const tail_spec&) const = default;
};

/// Tail value at n, before exceptions. Negative results are possible for
/// periodic tails; a total map covers those keys with exceptions.
inline std::int64_t tail_value(const tail_spec& t, nat n) {
  if (t.is_constant()) return static_cast<std::int64_t>(t.value);
  return static_cast<std::int64_t>(n) + t.offsets[n % t.period];
}

// ---------------------------------------------------------------------------
// The representable self-map: tail plus sorted finite exception table.

struct self_map {
  tail_spec tail;
  std::vector<std::pair<nat, nat>> exceptions;  // sorted by key, keys unique

  bool operator==(const self_map&) const = default;
};

inline const nat* find_exception(const self_map& f, nat n) {
  auto it = std::lower_bound(
      f.exceptions.begin(), f.exceptions.end(), n,
      [](const std::pair<nat, nat>& e, nat key) { return e.first < key; });
  if (it != f.exceptions.end() && it->first == n) return &it->second;
  return nullptr;
}

inline nat evaluate(const self_map& f, nat n) {
  assert(std::is_sorted(f.exceptions.begin(), f.exceptions.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; }));
  if (const nat* v = find_exception(f, n)) return *v;
  const std::int64_t t = tail_value(f.tail, n);
  if (t < 0)
    throw std::logic_error("self_map tail is negative at key " + std::to_string(n) +
                           " without an exception (totality breach)");
  return static_cast<nat>(t);
}

namespace detail {

inline std::int64_t max_exception_key(const self_map& f) {
  return f.exceptions.empty() ? -1
                              : static_cast<std::int64_t>(f.exceptions.back().first);
}

inline std::int64_t max_exception_value(const self_map& f) {
  std::int64_t m = -1;
  for (const auto& [k, v] : f.exceptions)
    m = std::max(m, static_cast<std::int64_t>(v));
  return m;
}

inline std::int64_t max_abs_offset(const tail_spec& t) {
  std::int64_t m = 0;
  if (t.is_periodic())
    for (std::int64_t d : t.offsets) m = std::max(m, d < 0 ? -d : d);
  return m;
}

inline std::vector<nat> sorted_unique(std::vector<nat> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace detail

/// Bound beyond which a map acts as its pure tail, clear of every exception:
/// no exception key or value reaches past it, and periodic shifts cannot pull
/// points from beyond it back into the exceptional region.
inline nat stability_window(const self_map& f) {
  const std::int64_t mk = detail::max_exception_key(f);
  const std::int64_t mv = detail::max_exception_value(f);
  if (f.tail.is_constant()) {
    const std::int64_t c = static_cast<std::int64_t>(f.tail.value);
    return static_cast<nat>(std::max({mk, mv, c, std::int64_t{0}}) + 1);
  }
  const std::int64_t p = static_cast<std::int64_t>(f.tail.period);
  const std::int64_t base = std::max({mk, mv, p});
  return static_cast<nat>(base + detail::max_abs_offset(f.tail) + p + 1);
}

/// Unique canonical form: minimal tail period, exceptions sorted with every
/// redundant entry removed. Two canonical maps are structurally equal exactly
/// when they denote the same function.
inline self_map canonicalize(const self_map& f) {
  tail_spec tail = f.tail;

  if (tail.is_periodic()) {
    if (tail.period == 0 || tail.offsets.size() != tail.period)
      throw std::invalid_argument("periodic tail has inconsistent period/offsets");
    for (nat q = 1; q < tail.period; ++q) {
      if (tail.period % q != 0) continue;
      bool repeats = true;
      for (nat r = 0; r < tail.period && repeats; ++r)
        repeats = (tail.offsets[r] == tail.offsets[r % q]);
      if (repeats) {
        tail.offsets.resize(q);
        tail.period = q;
        break;
      }
    }
  }

  auto exc = f.exceptions;
  std::sort(exc.begin(), exc.end());
  for (std::size_t i = 1; i < exc.size(); ++i)
    if (exc[i].first == exc[i - 1].first)
      throw std::invalid_argument("duplicate exception key " +
                                  std::to_string(exc[i].first));

  const auto has_key = [&exc](nat n) {
    auto it = std::lower_bound(
        exc.begin(), exc.end(), n,
        [](const std::pair<nat, nat>& e, nat key) { return e.first < key; });
    return it != exc.end() && it->first == n;
  };

  if (tail.is_periodic()) {
    std::vector<nat> missing;
    for (nat r = 0; r < tail.period; ++r) {
      const std::int64_t d = tail.offsets[r];
      if (d >= 0) continue;
      for (std::int64_t n = static_cast<std::int64_t>(r); n < -d;
           n += static_cast<std::int64_t>(tail.period))
        if (!has_key(static_cast<nat>(n))) missing.push_back(static_cast<nat>(n));
    }
    if (!missing.empty()) {
      std::sort(missing.begin(), missing.end());
      throw totality_error(std::move(missing));
    }
  }

  std::vector<std::pair<nat, nat>> kept;
  kept.reserve(exc.size());
  for (const auto& [k, v] : exc) {
    const std::int64_t t = tail_value(tail, k);
    if (t >= 0 && static_cast<std::int64_t>(v) == t) continue;  // redundant
    kept.emplace_back(k, v);
  }

  return self_map{std::move(tail), std::move(kept)};
}

// ---------------------------------------------------------------------------
// Composition. The class is closed: periodic-after-periodic stays periodic
// with period dividing lcm of the two, and a constant tail on either side
// collapses the composite to a constant tail.

inline self_map compose(const self_map& gin, const self_map& fin) {
  const self_map g = canonicalize(gin);
  const self_map f = canonicalize(fin);
  const auto eval_h = [&](nat n) { return evaluate(g, evaluate(f, n)); };

  if (f.tail.is_constant()) {
    const nat c = evaluate(g, f.tail.value);
    std::vector<std::pair<nat, nat>> exc;
    for (const auto& [k, v] : f.exceptions) exc.emplace_back(k, evaluate(g, v));
    return canonicalize(self_map{tail_spec::constant(c), std::move(exc)});
  }

  if (g.tail.is_constant()) {
    // Beyond the bound, f's tail value exceeds every exception key of g.
    const std::int64_t bound =
        std::max({detail::max_exception_key(f) + 1,
                  detail::max_exception_key(g) + detail::max_abs_offset(f.tail) + 1,
                  std::int64_t{1}});
    const nat c = g.tail.value;
    std::vector<std::pair<nat, nat>> exc;
    for (std::int64_t n = 0; n < bound; ++n) {
      const nat v = eval_h(static_cast<nat>(n));
      if (v != c) exc.emplace_back(static_cast<nat>(n), v);
    }
    return canonicalize(self_map{tail_spec::constant(c), std::move(exc)});
  }

  const nat pf = f.tail.period;
  const nat pg = g.tail.period;
  const nat L = std::lcm(pf, pg);
  std::vector<std::int64_t> offs(L);
  for (nat r = 0; r < L; ++r) {
    const std::int64_t d = f.tail.offsets[r % pf];
    const std::int64_t s = static_cast<std::int64_t>(r) + d;
    const std::int64_t q = static_cast<std::int64_t>(pg);
    const nat sr = static_cast<nat>(((s % q) + q) % q);
    offs[r] = d + g.tail.offsets[sr];
  }

  // Beyond the bound, n avoids f's exceptions, f(n) avoids g's exceptions,
  // and the combined offset cannot shift below zero.
  const std::int64_t bound =
      std::max({detail::max_exception_key(f) + 1,
                detail::max_exception_key(g) + detail::max_abs_offset(f.tail) + 1,
                detail::max_abs_offset(f.tail) + detail::max_abs_offset(g.tail) + 1,
                static_cast<std::int64_t>(L)});

  std::vector<std::pair<nat, nat>> exc;
  for (std::int64_t n = 0; n < bound; ++n) {
    const nat v = eval_h(static_cast<nat>(n));
    const std::int64_t t = n + offs[static_cast<nat>(n) % L];
    if (t < 0 || static_cast<std::int64_t>(v) != t)
      exc.emplace_back(static_cast<nat>(n), v);
  }
  return canonicalize(self_map{tail_spec::periodic(L, std::move(offs)), std::move(exc)});
}

inline self_map power(const self_map& f, nat n) {
  self_map acc;  // identity
  for (nat i = 0; i < n; ++i) acc = compose(f, acc);
  return canonicalize(acc);
}

// ---------------------------------------------------------------------------
// Finite-or-infinite set results.

/// Names residue classes whose sufficiently large members all lie in the set.
struct infinite_witness {
  nat modulus = 1;
  std::vector<nat> residues;  // sorted, nonempty
  std::string note;

  bool operator==(const infinite_witness&) const = default;
};

inline std::string describe(const infinite_witness& w) {
  return "residue " + std::to_string(w.residues.empty() ? 0 : w.residues.front()) +
         " mod " + std::to_string(w.modulus);
}

class finiteness_result {
 public:
  static finiteness_result finite(std::vector<nat> elems) {
    finiteness_result r;
    r.elements_ = detail::sorted_unique(std::move(elems));
    return r;
  }

  static finiteness_result infinite(infinite_witness w) {
    finiteness_result r;
    r.witness_ = std::move(w);
    return r;
  }

  bool is_finite() const noexcept { return elements_.has_value(); }

  // Rvalue overloads hand the payload out by value, so chaining off a
  // temporary result never leaves a dangling reference behind.
  const std::vector<nat>& elements() const& {
    if (!is_finite()) throw std::logic_error("finiteness_result: set is infinite");
    return *elements_;
  }

  std::vector<nat> elements() && {
    if (!is_finite()) throw std::logic_error("finiteness_result: set is infinite");
    return *std::move(elements_);
  }

  const infinite_witness& witness() const& {
    if (is_finite()) throw std::logic_error("finiteness_result: set is finite");
    return *witness_;
  }

  infinite_witness witness() && {
    if (is_finite()) throw std::logic_error("finiteness_result: set is finite");
    return *std::move(witness_);
  }

  bool operator==(const finiteness_result&) const = default;

 private:
  std::optional<std::vector<nat>> elements_;
  std::optional<infinite_witness> witness_;
};

/// Exact preimage of {m}. Finite whenever the tail is periodic; for a
/// constant tail the fibre over the constant value is cofinite, reported as
/// infinite with a tail-kind witness.
inline finiteness_result preimage(const self_map& fin, nat m) {
  const self_map f = canonicalize(fin);
  std::vector<nat> hits;
  for (const auto& [k, v] : f.exceptions)
    if (v == m) hits.push_back(k);

  if (f.tail.is_constant()) {
    if (f.tail.value == m)
      return finiteness_result::infinite(
          {1, {0}, "constant tail attains its value on a cofinite set"});
    return finiteness_result::finite(std::move(hits));
  }

  const nat p = f.tail.period;
  for (nat r = 0; r < p; ++r) {
    const std::int64_t n = static_cast<std::int64_t>(m) - f.tail.offsets[r];
    if (n < 0) continue;
    const nat nn = static_cast<nat>(n);
    if (nn % p != r) continue;
    if (find_exception(f, nn)) continue;  // exception overrides the tail
    hits.push_back(nn);
  }
  return finiteness_result::finite(std::move(hits));
}

/// The set of points where f and g differ. Exact finite set when the
/// canonical tails coincide; otherwise infinite, with every residue class
/// (mod lcm of the periods) on which the tails disagree listed.
inline finiteness_result disagreement(const self_map& fin, const self_map& gin) {
  const self_map f = canonicalize(fin);
  const self_map g = canonicalize(gin);

  if (f.tail == g.tail) {
    std::vector<nat> keys;
    for (const auto& [k, v] : f.exceptions) keys.push_back(k);
    for (const auto& [k, v] : g.exceptions) keys.push_back(k);
    keys = detail::sorted_unique(std::move(keys));
    std::vector<nat> diff;
    for (nat k : keys)
      if (evaluate(f, k) != evaluate(g, k)) diff.push_back(k);
    return finiteness_result::finite(std::move(diff));
  }

  if (f.tail.is_periodic() && g.tail.is_periodic()) {
    const nat L = std::lcm(f.tail.period, g.tail.period);
    std::vector<nat> residues;
    for (nat r = 0; r < L; ++r)
      if (f.tail.offsets[r % f.tail.period] != g.tail.offsets[r % g.tail.period])
        residues.push_back(r);
    // Distinct canonical periodic tails must differ on some residue class:
    // agreement on every residue mod lcm would force equal minimal forms.
    assert(!residues.empty());
    return finiteness_result::infinite(
        {L, std::move(residues), "tail offsets differ on the listed residue classes"});
  }

  if (f.tail.is_constant() && g.tail.is_constant())
    return finiteness_result::infinite({1, {0}, "constant tails differ"});

  return finiteness_result::infinite(
      {1, {0}, "tails differ in kind: a periodic shift eventually exceeds any constant"});
}

inline bool almost_equal(const self_map& f, const self_map& g) {
  return disagreement(f, g).is_finite();
}

// ---------------------------------------------------------------------------
// Named maps.

inline self_map identity_map() { return self_map{}; }

/// n -> n + 1; injective, misses exactly 0.
inline self_map successor_map() {
  return self_map{tail_spec::periodic(1, {+1}), {}};
}

/// 0 -> 0 and n + 1 -> n; surjective, folds {0, 1} onto 0.
inline self_map predecessor_map() {
  return self_map{tail_spec::periodic(1, {-1}), {{0, 0}}};
}

/// The involution swapping 2m and 2m + 1.
inline self_map adjacent_swap() {
  return self_map{tail_spec::periodic(2, {+1, -1}), {}};
}

inline self_map constant_map(nat c) {
  return self_map{tail_spec::constant(c), {}};
}

}  // namespace nearbij
