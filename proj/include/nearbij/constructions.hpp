#pragma once

// Constructive procedures on near-bijections: a class inverse, repair of an
// index-zero map to a true bijection, reduction to an injection or a
// surjection with the index showing up as the size of the leftover
// complement, and synthesis of permutations lambda, rho relating two maps of
// equal index.
//
// Every "choose an arbitrary bijection between two finite sets" step is
// realized as the unique increasing-order bijection, and every "keep one
// point of a fibre" step keeps the smallest, so all outputs are
// deterministic and certifiable.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "self_map.hpp"

namespace nearbij {

class index_nonzero : public precondition_error {
 public:
  explicit index_nonzero(std::int64_t value)
      : precondition_error("index must be zero, got " + std::to_string(value)),
        value_(value) {}
  std::int64_t value() const noexcept { return value_; }

 private:
  std::int64_t value_;
};

class index_positive : public precondition_error {
 public:
  explicit index_positive(std::int64_t value)
      : precondition_error("index must be <= 0, got " + std::to_string(value)),
        value_(value) {}
  std::int64_t value() const noexcept { return value_; }

 private:
  std::int64_t value_;
};

class index_negative : public precondition_error {
 public:
  explicit index_negative(std::int64_t value)
      : precondition_error("index must be >= 0, got " + std::to_string(value)),
        value_(value) {}
  std::int64_t value() const noexcept { return value_; }

 private:
  std::int64_t value_;
};

class index_mismatch : public precondition_error {
 public:
  index_mismatch(std::int64_t lhs, std::int64_t rhs)
      : precondition_error("indices differ: " + std::to_string(lhs) + " vs " +
                           std::to_string(rhs)),
        lhs_(lhs),
        rhs_(rhs) {}
  std::int64_t lhs() const noexcept { return lhs_; }
  std::int64_t rhs() const noexcept { return rhs_; }

 private:
  std::int64_t lhs_, rhs_;
};

class fibers_mismatch : public precondition_error {
 public:
  explicit fibers_mismatch(nat point)
      : precondition_error("fiber structures disagree over value " + std::to_string(point)),
        point_(point) {}
  nat point() const noexcept { return point_; }

 private:
  nat point_;
};

namespace detail {

/// Builds the canonical representable form of a map given exact pointwise
/// evaluation. The caller guarantees that for every n >= base,
/// eval(n) = n + c[n mod period] for fixed offsets c; the offsets are
/// sampled just past base and re-checked one period later.
template <typename Eval>
self_map from_pointwise(Eval&& eval, nat period, nat base) {
  std::vector<std::int64_t> offsets(period);
  for (nat r = 0; r < period; ++r) {
    const nat n = base + ((r + period - base % period) % period);
    offsets[r] = static_cast<std::int64_t>(eval(n)) - static_cast<std::int64_t>(n);
    const nat n2 = n + period;
    const std::int64_t check =
        static_cast<std::int64_t>(eval(n2)) - static_cast<std::int64_t>(n2);
    if (check != offsets[r])
      throw std::logic_error("pointwise map is not shift-periodic past the given base");
  }

  std::vector<std::pair<nat, nat>> exc;
  for (nat n = 0; n < base; ++n) {
    const nat v = eval(n);
    const std::int64_t t = static_cast<std::int64_t>(n) + offsets[n % period];
    if (t < 0 || static_cast<std::int64_t>(v) != t) exc.emplace_back(n, v);
  }
  return canonicalize(self_map{tail_spec::periodic(period, std::move(offsets)),
                               std::move(exc)});
}

inline nat period_of(const self_map& f) {
  return f.tail.is_periodic() ? f.tail.period : 1;
}

/// A base past which two maps, their unique preimages under each other and
/// any finite complement bookkeeping have all settled into pure tails.
inline nat synthesis_base(const self_map& a, const self_map& b) {
  const nat L = std::lcm(period_of(a), period_of(b));
  return stability_window(a) + stability_window(b) +
         static_cast<nat>(max_abs_offset(a.tail)) +
         static_cast<nat>(max_abs_offset(b.tail)) + L + 1;
}

inline self_map with_reassigned_points(const self_map& f,
                                       const std::vector<nat>& points,
                                       const std::vector<nat>& targets) {
  if (points.size() != targets.size())
    throw std::logic_error("reassignment requires equally many points and targets");
  std::vector<std::pair<nat, nat>> exc(f.exceptions);
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool replaced = false;
    for (auto& [k, v] : exc)
      if (k == points[i]) {
        v = targets[i];
        replaced = true;
        break;
      }
    if (!replaced) exc.emplace_back(points[i], targets[i]);
  }
  return canonicalize(self_map{f.tail, std::move(exc)});
}

}  // namespace detail

/// An inverse of f up to almost equality: inverts f where its fibre is a
/// singleton and sends everything else to 0. Composing either way with f
/// yields the identity off a finite set.
inline self_map class_inverse(const self_map& fin) {
  const self_map f = canonicalize(fin);
  const map_profile p = profile(f);
  if (!p.index) detail::throw_not_near_bijection(p);

  const auto eval_inverse = [&f](nat m) -> nat {
    const std::vector<nat> pre = preimage(f, m).elements();
    return pre.size() == 1 ? pre.front() : 0;
  };
  return detail::from_pointwise(eval_inverse, f.tail.period, stability_window(f));
}

/// Turns an index-zero near-bijection into a true bijection by keeping the
/// smallest point of every fibre and sending the remaining points, in
/// increasing order, onto the sorted unattained values. The result agrees
/// with f everywhere except at exactly |range complement| points.
inline self_map repair_to_bijection(const self_map& fin) {
  const self_map f = canonicalize(fin);
  const map_profile p = profile(f);
  if (!p.index) detail::throw_not_near_bijection(p);
  if (*p.index != 0) throw index_nonzero(*p.index);

  std::vector<nat> marked;
  for (const auto& [value, fiber] : fiber_decomposition(f))
    marked.insert(marked.end(), fiber.begin() + 1, fiber.end());  // fibres sorted
  std::sort(marked.begin(), marked.end());

  const std::vector<nat>& targets = p.range_complement.elements();
  if (marked.size() != targets.size())
    throw std::logic_error("index zero must balance marked points against missing values");
  return detail::with_reassigned_points(f, marked, targets);
}

/// Injective representative of [f], for index(f) <= 0: empties every fibre
/// down to its smallest point, redirecting the marked points into the
/// unattained values. The output misses exactly -index(f) values.
inline self_map reduce_to_injection(const self_map& fin) {
  const self_map f = canonicalize(fin);
  const map_profile p = profile(f);
  if (!p.index) detail::throw_not_near_bijection(p);
  if (*p.index > 0) throw index_positive(*p.index);

  std::vector<nat> marked;
  for (const auto& [value, fiber] : fiber_decomposition(f))
    marked.insert(marked.end(), fiber.begin() + 1, fiber.end());
  std::sort(marked.begin(), marked.end());

  const std::vector<nat>& complement = p.range_complement.elements();
  if (marked.size() > complement.size())
    throw std::logic_error("nonpositive index must leave room in the range complement");
  const std::vector<nat> targets(complement.begin(),
                                 complement.begin() + static_cast<std::ptrdiff_t>(marked.size()));
  return detail::with_reassigned_points(f, marked, targets);
}

/// Surjective representative of [f], for index(f) >= 0: redirects exactly
/// |range complement| fibre points onto the unattained values, always taking
/// the largest member of a currently largest fibre and never emptying a
/// fibre past one survivor.
inline self_map reduce_to_surjection(const self_map& fin) {
  const self_map f = canonicalize(fin);
  const map_profile p = profile(f);
  if (!p.index) detail::throw_not_near_bijection(p);
  if (*p.index < 0) throw index_negative(*p.index);

  std::vector<std::vector<nat>> fibers;
  for (const auto& [value, fiber] : fiber_decomposition(f)) fibers.push_back(fiber);

  const std::vector<nat>& targets = p.range_complement.elements();
  std::vector<nat> marked;
  for (std::size_t step = 0; step < targets.size(); ++step) {
    std::size_t pick = fibers.size();
    for (std::size_t i = 0; i < fibers.size(); ++i) {
      if (fibers[i].size() < 2) continue;  // keep one survivor per fibre
      if (pick == fibers.size() || fibers[i].size() > fibers[pick].size() ||
          (fibers[i].size() == fibers[pick].size() &&
           fibers[i].back() > fibers[pick].back()))
        pick = i;
    }
    if (pick == fibers.size())
      throw std::logic_error("nonnegative index must leave enough fibre points to mark");
    marked.push_back(fibers[pick].back());
    fibers[pick].pop_back();
  }
  std::sort(marked.begin(), marked.end());
  return detail::with_reassigned_points(f, marked, targets);
}

// ---------------------------------------------------------------------------
// Synthesis of permutations relating two equal-index near-bijections.

struct named_check {
  std::string name;
  bool passed = false;
};

struct synthesis_certificate {
  self_map f, g;
  self_map lambda, rho;
  std::vector<nat> residual_lambda;  // points where lambda . f differs from g
  std::vector<nat> residual_rho;     // points where g differs from f . rho
  std::vector<named_check> checks;

  bool all_checks_passed() const {
    for (const named_check& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

/// Increasing-order matching between two finite sets of equal size.
inline nat rank_map(const std::vector<nat>& from, const std::vector<nat>& to, nat x) {
  const auto it = std::lower_bound(from.begin(), from.end(), x);
  if (it == from.end() || *it != x)
    throw std::logic_error("rank_map: point is not in the source set");
  return to[static_cast<std::size_t>(it - from.begin())];
}

inline std::size_t fiber_size(const self_map& f, nat value) {
  return preimage(f, value).elements().size();
}

/// lambda, rho for injective near-surjections of equal index. lambda
/// composes with f to give g exactly; rho gives g = f . rho off a finite set.
inline void synthesize_injective_pair(const self_map& f0, const self_map& g0,
                                      synthesis_certificate& cert) {
  const nat base = synthesis_base(f0, g0);
  const nat L = std::lcm(period_of(f0), period_of(g0));

  const std::vector<nat> range_gap_f = range_complement(f0).elements();
  const std::vector<nat> range_gap_g = range_complement(g0).elements();
  cert.checks.push_back({"lambda_complements_same_size",
                         range_gap_f.size() == range_gap_g.size()});

  const auto eval_lambda = [&](nat m) -> nat {
    const std::vector<nat> pre = preimage(f0, m).elements();
    if (pre.size() == 1) return evaluate(g0, pre.front());
    return rank_map(range_gap_f, range_gap_g, m);
  };
  cert.lambda = from_pointwise(eval_lambda, L, base);

  // Points whose g0-value misses f0's range, and dually: the two finite
  // complements rho must match up.
  std::vector<nat> rho_dom_gap, rho_ran_gap;
  for (nat n = 0; n < base; ++n) {
    if (preimage(f0, evaluate(g0, n)).elements().empty()) rho_dom_gap.push_back(n);
    if (preimage(g0, evaluate(f0, n)).elements().empty()) rho_ran_gap.push_back(n);
  }
  cert.checks.push_back({"rho_complements_same_size",
                         rho_dom_gap.size() == rho_ran_gap.size()});

  const auto eval_rho = [&](nat n) -> nat {
    const std::vector<nat> pre = preimage(f0, evaluate(g0, n)).elements();
    if (pre.size() == 1) return pre.front();
    return rank_map(rho_dom_gap, rho_ran_gap, n);
  };
  cert.rho = from_pointwise(eval_rho, L, base);

  cert.checks.push_back({"lambda_f_equals_g_on_reduced",
                         compose(cert.lambda, f0) == g0});
}

/// lambda, rho for surjective near-injections of equal index, built over the
/// intersection of the two monosets; the two cardinality claims about the
/// leftover finite complements are recorded as checks.
inline void synthesize_surjective_pair(const self_map& f0, const self_map& g0,
                                       synthesis_certificate& cert) {
  const nat base = synthesis_base(f0, g0);
  const nat L = std::lcm(period_of(f0), period_of(g0));

  // n lies in both monosets iff both fibres through it are singletons.
  const auto in_both_monosets = [&](nat n) {
    return fiber_size(f0, evaluate(f0, n)) == 1 && fiber_size(g0, evaluate(g0, n)) == 1;
  };

  // Values of f0 (resp. g0) on the common monoset, complemented within the
  // settled window.
  std::vector<nat> lambda_dom_gap, lambda_ran_gap;
  for (nat m = 0; m < base; ++m) {
    const std::vector<nat> pre_f = preimage(f0, m).elements();
    const bool clean_f = pre_f.size() == 1 && in_both_monosets(pre_f.front());
    if (!clean_f) lambda_dom_gap.push_back(m);
    const std::vector<nat> pre_g = preimage(g0, m).elements();
    const bool clean_g = pre_g.size() == 1 && in_both_monosets(pre_g.front());
    if (!clean_g) lambda_ran_gap.push_back(m);
  }
  cert.checks.push_back({"surjective_image_complements_same_size",
                         lambda_dom_gap.size() == lambda_ran_gap.size()});

  const auto eval_lambda = [&](nat m) -> nat {
    const std::vector<nat> pre = preimage(f0, m).elements();
    if (pre.size() == 1 && in_both_monosets(pre.front()))
      return evaluate(g0, pre.front());
    return rank_map(lambda_dom_gap, lambda_ran_gap, m);
  };
  cert.lambda = from_pointwise(eval_lambda, L, base);

  // rho matches points of g0's monoset whose value is cleanly attained by
  // f0, with the finite leftovers paired in increasing order.
  const auto rho_clean = [&](nat n) {
    return fiber_size(g0, evaluate(g0, n)) == 1 &&
           fiber_size(f0, evaluate(g0, n)) == 1;
  };
  const auto rho_target_clean = [&](nat n) {
    return fiber_size(f0, evaluate(f0, n)) == 1 &&
           fiber_size(g0, evaluate(f0, n)) == 1;
  };
  std::vector<nat> rho_dom_gap, rho_ran_gap;
  for (nat n = 0; n < base; ++n) {
    if (!rho_clean(n)) rho_dom_gap.push_back(n);
    if (!rho_target_clean(n)) rho_ran_gap.push_back(n);
  }
  cert.checks.push_back({"surjective_preimage_complements_same_size",
                         rho_dom_gap.size() == rho_ran_gap.size()});

  const auto eval_rho = [&](nat n) -> nat {
    if (rho_clean(n)) return preimage(f0, evaluate(g0, n)).elements().front();
    return rank_map(rho_dom_gap, rho_ran_gap, n);
  };
  cert.rho = from_pointwise(eval_rho, L, base);
}

}  // namespace detail

/// Permutations lambda, rho with lambda . f almost equal to g and g almost
/// equal to f . rho, for near-bijections of equal index. Nonpositive index
/// routes through the injective reductions (where lambda relates the reduced
/// maps exactly); nonnegative index routes through the surjective ones.
inline synthesis_certificate synthesize_lambda_rho(const self_map& fin,
                                                   const self_map& gin) {
  const self_map f = canonicalize(fin);
  const self_map g = canonicalize(gin);
  const std::int64_t kf = index(f);
  const std::int64_t kg = index(g);
  if (kf != kg) throw index_mismatch(kf, kg);

  synthesis_certificate cert;
  cert.f = f;
  cert.g = g;

  if (kf <= 0) {
    detail::synthesize_injective_pair(reduce_to_injection(f), reduce_to_injection(g), cert);
  } else {
    detail::synthesize_surjective_pair(reduce_to_surjection(f), reduce_to_surjection(g), cert);
  }

  const classification cl = classify(cert.lambda);
  const classification cr = classify(cert.rho);
  cert.checks.push_back({"lambda_is_permutation", cl.injective && cl.surjective});
  cert.checks.push_back({"rho_is_permutation", cr.injective && cr.surjective});

  const finiteness_result dl = disagreement(compose(cert.lambda, f), g);
  const finiteness_result dr = disagreement(g, compose(f, cert.rho));
  cert.checks.push_back({"lambda_f_almost_equals_g", dl.is_finite()});
  cert.checks.push_back({"g_almost_equals_f_rho", dr.is_finite()});
  if (dl.is_finite()) cert.residual_lambda = dl.elements();
  if (dr.is_finite()) cert.residual_rho = dr.elements();
  return cert;
}

/// True when two surjective near-injections fold the same values with the
/// same fibre sizes, which is exactly when one is the other precomposed with
/// a permutation.
inline bool fibers_match(const self_map& fin, const self_map& gin) {
  const self_map f = canonicalize(fin);
  const self_map g = canonicalize(gin);
  const classification cf = classify(f);
  const classification cg = classify(g);
  if (!cf.surjective || !cf.near_injective)
    throw precondition_error("fibers_match: first map is not a surjective near-injection");
  if (!cg.surjective || !cg.near_injective)
    throw precondition_error("fibers_match: second map is not a surjective near-injection");

  const auto fibers_f = fiber_decomposition(f);
  const auto fibers_g = fiber_decomposition(g);
  if (fibers_f.size() != fibers_g.size()) return false;
  for (std::size_t i = 0; i < fibers_f.size(); ++i)
    if (fibers_f[i].first != fibers_g[i].first ||
        fibers_f[i].second.size() != fibers_g[i].second.size())
      return false;
  return true;
}

/// The exact permutation rho with f . rho = g, available when the fibre
/// structures match: monoset points are matched through the shared values
/// and each fibre is carried onto its counterpart in increasing order.
inline self_map synthesize_rho_exact(const self_map& fin, const self_map& gin) {
  const self_map f = canonicalize(fin);
  const self_map g = canonicalize(gin);
  if (!fibers_match(f, g)) {
    // Walk the value-sorted fibre lists to name the first disagreement.
    const auto fibers_f = fiber_decomposition(f);
    const auto fibers_g = fiber_decomposition(g);
    nat offending = 0;
    std::size_t i = 0, j = 0;
    while (i < fibers_f.size() || j < fibers_g.size()) {
      if (j == fibers_g.size() ||
          (i < fibers_f.size() && fibers_f[i].first < fibers_g[j].first)) {
        offending = fibers_f[i].first;
        break;
      }
      if (i == fibers_f.size() || fibers_g[j].first < fibers_f[i].first) {
        offending = fibers_g[j].first;
        break;
      }
      if (fibers_f[i].second.size() != fibers_g[j].second.size()) {
        offending = fibers_f[i].first;
        break;
      }
      ++i;
      ++j;
    }
    throw fibers_mismatch(offending);
  }

  const nat base = detail::synthesis_base(f, g);
  const nat L = std::lcm(detail::period_of(f), detail::period_of(g));

  const auto eval_rho = [&](nat n) -> nat {
    const nat value = evaluate(g, n);
    const std::vector<nat> fiber_g = preimage(g, value).elements();
    const std::vector<nat> fiber_f = preimage(f, value).elements();
    if (fiber_g.size() == 1) {
      if (fiber_f.size() != 1)
        throw std::logic_error("shared monoset value must be cleanly attained by both maps");
      return fiber_f.front();
    }
    return detail::rank_map(fiber_g, fiber_f, n);
  };
  const self_map rho = detail::from_pointwise(eval_rho, L, base);

  if (!(compose(f, rho) == g))
    throw std::logic_error("synthesized rho fails to satisfy f . rho = g exactly");
  return rho;
}

}  // namespace nearbij
