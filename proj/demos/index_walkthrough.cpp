// A short tour: the two shift generators, their indices, a repair, and the
// failure of the splitting image to be central.

#include <cstdio>

#include <nearbij/nearbij.hpp>

using namespace nearbij;

int main() {
  const self_map u = successor_map();     // n -> n + 1, misses 0
  const self_map v = predecessor_map();   // 0 -> 0, n + 1 -> n

  std::printf("index of the successor shift:   %lld\n", (long long)index(u));
  std::printf("index of the predecessor shift: %lld\n", (long long)index(v));
  std::printf("v after u is the identity:      %s\n",
              compose(v, u) == identity_map() ? "yes" : "no");
  std::printf("u after v equals the identity off %zu point(s)\n",
              disagreement(compose(u, v), identity_map()).elements().size());

  // The class group: [u] and [v] are mutual inverses, and the index is a
  // homomorphism onto the integers.
  const class_rep a = class_of(power(u, 3));
  const class_rep b = class_of(power(v, 5));
  std::printf("Ind([u^3][v^5]) = %lld\n", (long long)ind(class_compose(a, b)));

  // An index-zero map repairs to a true bijection.
  const self_map collapse{tail_spec::periodic(1, {0}), {{0, 1}}};  // 0 and 1 both -> 1
  const self_map fixed = repair_to_bijection(collapse);
  std::printf("repaired map swaps 0 and 1:     %llu %llu\n",
              (unsigned long long)evaluate(fixed, 0), (unsigned long long)evaluate(fixed, 1));

  // The splitting of the index is not central: the adjacent swap and the
  // shift disagree on every residue class mod 2 once the order flips.
  const finiteness_result d = noncentrality_demo();
  std::printf("swap/shift composites differ on %s\n",
              d.is_finite() ? "a finite set (!)" : "infinitely many points");
  return 0;
}
