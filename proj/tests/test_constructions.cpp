#include <catch2/catch_amalgamated.hpp>

#include <nearbij/analysis.hpp>
#include <nearbij/constructions.hpp>
#include <nearbij/random_maps.hpp>

using namespace nearbij;

namespace {

self_map periodic_map(nat p, std::vector<std::int64_t> offsets,
                      std::vector<std::pair<nat, nat>> exc = {}) {
  return canonicalize(self_map{tail_spec::periodic(p, std::move(offsets)), std::move(exc)});
}

bool is_permutation(const self_map& f) {
  const classification c = classify(f);
  return c.injective && c.surjective;
}

}  // namespace

TEST_CASE("class inverses of the generators") {
  const self_map u = successor_map();
  const self_map v = predecessor_map();

  const self_map u_inv = class_inverse(u);
  CHECK(u_inv == v);  // the constructed inverse is the predecessor itself
  CHECK(almost_equal(compose(u_inv, u), identity_map()));
  CHECK(almost_equal(compose(u, u_inv), identity_map()));

  CHECK(class_inverse(identity_map()) == identity_map());

  const self_map swap_inv = class_inverse(adjacent_swap());
  CHECK(almost_equal(swap_inv, adjacent_swap()));
  CHECK(compose(adjacent_swap(), adjacent_swap()) == identity_map());
}

TEST_CASE("class inverse works on random near-bijections") {
  rng_engine rng(101);
  for (int trial = 0; trial < 80; ++trial) {
    const self_map f = random_near_bijection(rng);
    const self_map g = class_inverse(f);
    CHECK(almost_equal(compose(g, f), identity_map()));
    CHECK(almost_equal(compose(f, g), identity_map()));
    CHECK(index(g) == -index(f));
  }
}

TEST_CASE("class inverse refuses non-near-bijections") {
  CHECK_THROWS_AS(class_inverse(constant_map(0)), not_near_bijection);
}

TEST_CASE("repair of index-zero maps") {
  // Gluing 0 onto 1 repairs to the transposition of 0 and 1.
  const self_map glued = periodic_map(1, {0}, {{0, 1}});
  REQUIRE(index(glued) == 0);
  CHECK(repair_to_bijection(glued) == periodic_map(1, {0}, {{0, 1}, {1, 0}}));

  CHECK(repair_to_bijection(identity_map()) == identity_map());

  // u . v is the identity off a single point. Its repair keeps the smallest
  // fibre member, so the output is the transposition of 0 and 1, which is
  // the identity up to almost equality.
  const self_map uv = compose(successor_map(), predecessor_map());
  REQUIRE(index(uv) == 0);
  const self_map repaired_uv = repair_to_bijection(uv);
  CHECK(repaired_uv == periodic_map(1, {0}, {{0, 1}, {1, 0}}));
  CHECK(almost_equal(repaired_uv, identity_map()));
}

TEST_CASE("repair rejects nonzero index, reporting it") {
  try {
    repair_to_bijection(successor_map());
    FAIL("expected index_nonzero");
  } catch (const index_nonzero& err) {
    CHECK(err.value() == -1);
  }
}

TEST_CASE("repair properties on random index-zero maps") {
  rng_engine rng(102);
  for (int trial = 0; trial < 120; ++trial) {
    const self_map f = random_index_zero_map(rng);
    const self_map g = repair_to_bijection(f);
    CHECK(is_permutation(g));
    CHECK(almost_equal(f, g));
    CHECK(disagreement(f, g).elements().size() ==
          range_complement(f).elements().size());
    // The repair only moves points that shared their value.
    for (nat n : disagreement(f, g).elements())
      CHECK(preimage(f, evaluate(f, n)).elements().size() >= 2);
  }
}

TEST_CASE("reduction to an injection") {
  CHECK(reduce_to_injection(successor_map()) == successor_map());

  const self_map f = periodic_map(1, {+1}, {{0, 2}});  // 0 and 1 both reach 2
  REQUIRE(index(f) == -1);
  const self_map g = reduce_to_injection(f);
  CHECK(classify(g).injective);
  CHECK(almost_equal(f, g));
  CHECK(range_complement(g).elements().size() == 1);

  // Index zero forces the reduction to be a full bijection.
  const self_map glued = periodic_map(1, {0}, {{0, 1}});
  CHECK(is_permutation(reduce_to_injection(glued)));

  CHECK_THROWS_AS(reduce_to_injection(predecessor_map()), index_positive);
}

TEST_CASE("reduction to a surjection") {
  CHECK(reduce_to_surjection(predecessor_map()) == predecessor_map());
  CHECK(reduce_to_surjection(power(predecessor_map(), 2)) ==
        power(predecessor_map(), 2));

  const self_map glued = periodic_map(1, {0}, {{0, 1}});
  CHECK(is_permutation(reduce_to_surjection(glued)));

  CHECK_THROWS_AS(reduce_to_surjection(successor_map()), index_negative);
}

TEST_CASE("reduction properties on random maps") {
  rng_engine rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t k = static_cast<std::int64_t>(trial % 4);

    const self_map f = random_map_with_index(rng, -k);
    const self_map gi = reduce_to_injection(f);
    CHECK(classify(gi).injective);
    CHECK(almost_equal(f, gi));
    CHECK(static_cast<std::int64_t>(range_complement(gi).elements().size()) == k);

    const self_map h = random_map_with_index(rng, k);
    const self_map gs = reduce_to_surjection(h);
    CHECK(classify(gs).surjective);
    CHECK(almost_equal(h, gs));
    const map_profile p = profile(gs);
    CHECK(static_cast<std::int64_t>(p.monoset_complement.elements().size()) -
              static_cast<std::int64_t>(p.image_of_monoset_complement.size()) ==
          k);
  }
}

TEST_CASE("synthesis for a pair of equal maps is trivial") {
  const synthesis_certificate cert =
      synthesize_lambda_rho(successor_map(), successor_map());
  CHECK(cert.lambda == identity_map());
  CHECK(cert.rho == identity_map());
  CHECK(cert.residual_lambda.empty());
  CHECK(cert.residual_rho.empty());
  CHECK(cert.all_checks_passed());
}

TEST_CASE("synthesis through the injective route") {
  // Both maps have index -2; lambda is the adjacent swap up to finitely much.
  const self_map f = power(successor_map(), 2);
  const self_map g = compose(adjacent_swap(), f);
  const synthesis_certificate cert = synthesize_lambda_rho(f, g);
  CHECK(cert.all_checks_passed());
  CHECK(is_permutation(cert.lambda));
  CHECK(is_permutation(cert.rho));
  CHECK(almost_equal(cert.lambda, adjacent_swap()));
  CHECK(almost_equal(compose(cert.lambda, f), g));
  CHECK(almost_equal(g, compose(f, cert.rho)));
}

TEST_CASE("synthesis through the surjective route") {
  const self_map f = predecessor_map();
  const self_map g = compose(predecessor_map(), adjacent_swap());
  REQUIRE(index(f) == 1);
  REQUIRE(index(g) == 1);
  const synthesis_certificate cert = synthesize_lambda_rho(f, g);
  CHECK(cert.all_checks_passed());
  CHECK(almost_equal(compose(cert.lambda, f), g));
  CHECK(almost_equal(g, compose(f, cert.rho)));
  CHECK(cert.residual_lambda == disagreement(compose(cert.lambda, f), g).elements());
  CHECK(cert.residual_rho == disagreement(g, compose(f, cert.rho)).elements());
}

TEST_CASE("synthesis rejects unequal indices") {
  try {
    synthesize_lambda_rho(successor_map(), predecessor_map());
    FAIL("expected index_mismatch");
  } catch (const index_mismatch& err) {
    CHECK(err.lhs() == -1);
    CHECK(err.rhs() == 1);
  }
}

TEST_CASE("synthesized permutations have index zero and zero offset sum") {
  rng_engine rng(104);
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t k = static_cast<std::int64_t>(trial % 7) - 3;
    const self_map f = random_map_with_index(rng, k);
    const self_map g = random_map_with_index(rng, k);
    const synthesis_certificate cert = synthesize_lambda_rho(f, g);
    CHECK(cert.all_checks_passed());
    for (const self_map* perm : {&cert.lambda, &cert.rho}) {
      CHECK(is_permutation(*perm));
      CHECK(index(*perm) == 0);
      std::int64_t sum = 0;
      for (std::int64_t d : perm->tail.offsets) sum += d;
      CHECK(sum == 0);
    }
    CHECK(almost_equal(compose(cert.lambda, f), g));
    CHECK(almost_equal(g, compose(f, cert.rho)));
  }
}

TEST_CASE("fiber matching of surjective near-injections") {
  const self_map v = predecessor_map();
  CHECK(fibers_match(v, v));

  // Precomposing v with the adjacent swap keeps the fibre pair {0, 1} over 0,
  // so the structures match and the exact rho recovers the composite.
  const self_map v_swap = compose(v, adjacent_swap());
  REQUIRE(fiber_decomposition(v_swap).size() == 1);
  CHECK(fiber_decomposition(v_swap)[0].first == 0);
  CHECK(fiber_decomposition(v_swap)[0].second == std::vector<nat>{0, 1});
  CHECK(fibers_match(v, v_swap));
  CHECK(compose(v, synthesize_rho_exact(v, v_swap)) == v_swap);

  // A surjection folding three points onto 0 does not match v's pair.
  const self_map v2 = power(predecessor_map(), 2);
  CHECK_FALSE(fibers_match(v, v2));

  CHECK_THROWS_AS(fibers_match(successor_map(), v), precondition_error);
  CHECK_THROWS_AS(fibers_match(v, constant_map(0)), precondition_error);
}

TEST_CASE("exact rho synthesis") {
  const self_map v = predecessor_map();
  CHECK(synthesize_rho_exact(v, v) == identity_map());

  // Same fibre pair over 0, different values elsewhere: rho swaps 2 and 3.
  const self_map g = canonicalize(
      self_map{tail_spec::periodic(1, {-1}), {{0, 0}, {2, 2}, {3, 1}}});
  REQUIRE(fibers_match(v, g));
  const self_map rho = synthesize_rho_exact(v, g);
  CHECK(is_permutation(rho));
  CHECK(compose(v, rho) == g);
  CHECK(evaluate(rho, 2) == 3);
  CHECK(evaluate(rho, 3) == 2);

  // Precomposing with any permutation preserves the fibre structure, so the
  // exact rho always exists and recovers the composite.
  rng_engine rng(105);
  for (int trial = 0; trial < 40; ++trial) {
    const self_map f = random_surjection_map(rng, trial % 3);
    const self_map sigma = random_permutation_map(rng);
    const self_map h = compose(f, sigma);
    REQUIRE(fibers_match(f, h));
    const self_map rho2 = synthesize_rho_exact(f, h);
    CHECK(compose(f, rho2) == h);
    CHECK(is_permutation(rho2));
  }
}

TEST_CASE("exact rho reports the offending value when fibres differ") {
  try {
    synthesize_rho_exact(predecessor_map(), power(predecessor_map(), 2));
    FAIL("expected fibers_mismatch");
  } catch (const fibers_mismatch& err) {
    CHECK(err.point() == 0);
  }
}
