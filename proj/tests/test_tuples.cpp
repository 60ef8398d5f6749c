#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wildpairs/rng.hpp"
#include "wildpairs/tuples.hpp"

using namespace wildpairs;

namespace {
MatTuple one_by_one(const Field& f, std::initializer_list<std::int64_t> vals) {
  std::vector<Mat> mats;
  for (auto v : vals) mats.push_back(Mat::from_ints(f, 1, 1, {v}));
  return MatTuple(mats);
}
}  // namespace

TEST_CASE("tuple invariants are enforced") {
  Field f = Field::make(7, 1);
  CHECK_THROWS_AS(MatTuple({}), InvalidArgument);
  CHECK_THROWS_AS(MatTuple({Mat::zero(f, 1, 1), Mat::zero(f, 2, 2)}), DimensionMismatch);
  CHECK_THROWS_AS(MatTuple({Mat::zero(f, 1, 1), Mat::zero(Field::make(5, 1), 1, 1)}),
                  FieldMismatch);
  CHECK_THROWS_AS(EquivalenceWitness(Mat::zero(f, 1, 1), Mat::identity(f, 1)), SingularMatrix);
  CHECK_THROWS_AS(SubstitutionMatrix(Mat::from_ints(f, 2, 2, {1, 2, 2, 4})), SingularMatrix);
}

TEST_CASE("apply_equivalence examples") {
  Field f7 = Field::make(7, 1);
  MatTuple t = one_by_one(f7, {1, 4});
  EquivalenceWitness w(Mat::from_ints(f7, 1, 1, {2}), Mat::from_ints(f7, 1, 1, {3}));
  CHECK(apply_equivalence(w, t) == one_by_one(f7, {6, 3}));
  CHECK(apply_equivalence(EquivalenceWitness(Mat::identity(f7, 1), Mat::identity(f7, 1)), t) == t);

  Rng rng(3);
  Field f = Field::make(10007, 1);
  MatTuple u = MatTuple::pair(rng.matrix(f, 2, 2), rng.matrix(f, 2, 2));
  EquivalenceWitness a(rng.invertible(f, 2), rng.invertible(f, 2));
  EquivalenceWitness b(rng.invertible(f, 2), rng.invertible(f, 2));
  EquivalenceWitness once(b.R() * a.R(), a.S() * b.S());
  CHECK(apply_equivalence(b, apply_equivalence(a, u)) == apply_equivalence(once, u));
  CHECK(apply_equivalence(compose(a, b), u) == apply_equivalence(once, u));
}

TEST_CASE("apply_star_congruence examples") {
  Field f7 = Field::make(7, 1);
  CongruenceWitness swap(Mat::from_ints(f7, 2, 2, {0, 1, 1, 0}));
  MatTuple t = MatTuple::pair(Mat::from_ints(f7, 2, 2, {1, 0, 0, 2}),
                              Mat::from_ints(f7, 2, 2, {0, 1, 0, 0}));
  MatTuple expected = MatTuple::pair(Mat::from_ints(f7, 2, 2, {2, 0, 0, 1}),
                                     Mat::from_ints(f7, 2, 2, {0, 0, 1, 0}));
  CHECK(apply_star_congruence(swap, t) == expected);
  CHECK(apply_star_congruence(CongruenceWitness(Mat::identity(f7, 2)), t) == t);

  Field f9 = Field::make(3, 2);
  Mat s(f9, 1, 1);
  s(0, 0) = f9.gen();
  MatTuple one({Mat::identity(f9, 1)});
  // (-t) * 1 * t = -t^2 = -2 = 1 in characteristic 3.
  CHECK(apply_star_congruence(CongruenceWitness(s), one) == one);
}

TEST_CASE("apply_substitution examples") {
  Field f5 = Field::make(5, 1);
  MatTuple ab = one_by_one(f5, {1, 2});
  CHECK(apply_substitution(SubstitutionMatrix::identity(f5), ab) == ab);
  CHECK(apply_substitution(SubstitutionMatrix(Mat::from_ints(f5, 2, 2, {0, 1, 1, 0})), ab) ==
        one_by_one(f5, {2, 1}));
  CHECK(apply_substitution(SubstitutionMatrix(Mat::from_ints(f5, 2, 2, {1, 1, 0, 1})), ab) ==
        one_by_one(f5, {3, 2}));
  CHECK_THROWS_AS(apply_substitution(SubstitutionMatrix::identity(f5), one_by_one(f5, {1, 2, 3})),
                  InvalidArgument);
}

TEST_CASE("tuple_direct_sum and verify_witness examples") {
  Field f = Field::make(7, 1);
  MatTuple sum = tuple_direct_sum(one_by_one(f, {1, 0}), one_by_one(f, {0, 1}));
  CHECK(sum == MatTuple::pair(Mat::from_ints(f, 2, 2, {1, 0, 0, 0}),
                              Mat::from_ints(f, 2, 2, {0, 0, 0, 1})));
  CHECK_THROWS_AS(tuple_direct_sum(one_by_one(f, {1}), one_by_one(f, {1, 2})), DimensionMismatch);

  Rng rng(8);
  MatTuple ab = MatTuple::pair(rng.matrix(f, 3, 3), rng.matrix(f, 3, 3));
  CHECK(verify_witness(SimilarityWitness(Mat::identity(f, 3)), ab, ab));
  CongruenceWitness w(rng.invertible(f, 3));
  CHECK(verify_witness(w, ab, apply_star_congruence(w, ab)));
  // Extent mismatch is a plain "no".
  CHECK_FALSE(verify_witness(SimilarityWitness(Mat::identity(f, 2)), ab, ab));
}

TEST_CASE("direct sum is associative bit-exactly") {
  Field f = Field::make(10007, 2);
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    auto rand_tuple = [&] {
      std::size_t r = rng.below(3), c = rng.below(3);
      return MatTuple({rng.matrix(f, r, c), rng.matrix(f, r, c), rng.matrix(f, r, c)});
    };
    MatTuple a = rand_tuple(), b = rand_tuple(), c = rand_tuple();
    CHECK(tuple_direct_sum(tuple_direct_sum(a, b), c) == tuple_direct_sum(a, tuple_direct_sum(b, c)));
  }
}

TEST_CASE("the four relations are equivalence relations on samples") {
  for (int deg : {1, 2}) {
    Field f = Field::make(10007, deg);
    Rng rng(100 + deg);
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t n = 1 + rng.below(4);
      MatTuple t = MatTuple::pair(rng.matrix(f, n, n), rng.matrix(f, n, n));
      Mat id = Mat::identity(f, n);

      // Equivalence.
      EquivalenceWitness e1(rng.invertible(f, n), rng.invertible(f, n));
      EquivalenceWitness e2(rng.invertible(f, n), rng.invertible(f, n));
      MatTuple u = apply_equivalence(e1, t), v = apply_equivalence(e2, u);
      CHECK(verify_witness(EquivalenceWitness(id, id), t, t));
      CHECK(verify_witness(inverse(e1), u, t));
      CHECK(verify_witness(compose(e1, e2), t, v));

      // *congruence.
      CongruenceWitness c1(rng.invertible(f, n)), c2(rng.invertible(f, n));
      u = apply_star_congruence(c1, t);
      v = apply_star_congruence(c2, u);
      CHECK(verify_witness(CongruenceWitness(id), t, t));
      CHECK(verify_witness(inverse(c1), u, t));
      CHECK(verify_witness(compose(c1, c2), t, v));

      // Similarity.
      SimilarityWitness s1(rng.invertible(f, n)), s2(rng.invertible(f, n));
      u = apply_similarity(s1, t);
      v = apply_similarity(s2, u);
      CHECK(verify_witness(SimilarityWitness(id), t, t));
      CHECK(verify_witness(inverse(s1), u, t));
      CHECK(verify_witness(compose(s1, s2), t, v));

      // Substitution.
      SubstitutionMatrix r1(rng.invertible(f, 2)), r2(rng.invertible(f, 2));
      u = apply_substitution(r1, t);
      v = apply_substitution(r2, u);
      CHECK(verify_witness(SubstitutionMatrix::identity(f), t, t));
      CHECK(verify_witness(SubstitutionMatrix(inverse(r1.matrix())), u, t));
      CHECK(verify_witness(SubstitutionMatrix(r2.matrix() * r1.matrix()), t, v));
    }
  }
}

TEST_CASE("pair_class uses the plain transpose") {
  Field f = Field::make(10007, 2);
  Rng rng(4);
  Mat s = rng.invertible(f, 2);
  MatTuple t = MatTuple::pair(rng.matrix(f, 2, 2), rng.matrix(f, 2, 2));
  SubstitutionMatrix r(rng.invertible(f, 2));
  PairClassWitness w(s, r);
  MatTuple sub = apply_substitution(r, t);
  MatTuple expected = MatTuple::pair(transpose(s) * sub[0] * s, transpose(s) * sub[1] * s);
  CHECK(apply_pair_class(w, t) == expected);
  CHECK(verify_witness(w, t, expected));
  CHECK(witness_kind(Witness(w)) == "pair_class");
}
