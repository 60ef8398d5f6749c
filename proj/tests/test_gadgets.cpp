#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wildpairs/gadgets.hpp"
#include "wildpairs/rng.hpp"

using namespace wildpairs;

namespace {
Mat m1x1(const Field& f, std::int64_t v) { return Mat::from_ints(f, 1, 1, {v}); }
}  // namespace

TEST_CASE("build_T examples") {
  Field f7 = Field::make(7, 1);
  GadgetPair g = build_T(f7.zero(), m1x1(f7, 3), m1x1(f7, 5));
  CHECK(g.pair[0] == Mat::from_ints(f7, 4, 4, {0, 0, 1, 0, 0, 0, 0, 1, 2, 1, 0, 0, 0, 2, 0, 0}));
  CHECK(g.pair[1] == Mat::from_ints(f7, 4, 4, {0, 0, 3, 0, 0, 0, 0, 5, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(g.provenance == "T");
  CHECK(g.n == 1);

  GadgetPair sym = build_T(f7.one(), Mat::identity(f7, 1), Mat::identity(f7, 1));
  CHECK(transpose(sym.pair[1]) == sym.pair[1]);

  GadgetPair sk = build_T(f7.from_int(-1), m1x1(f7, 2), m1x1(f7, 3));
  CHECK(transpose(sk.pair[1]) == -sk.pair[1]);
  // Hand-written 4x4 with -A*, -B* in the lower-left.
  CHECK(sk.pair[1] == Mat::from_ints(f7, 4, 4, {0, 0, 2, 0, 0, 0, 0, 3, 5, 0, 0, 0, 0, 4, 0, 0}));

  CHECK_THROWS_AS(build_T(f7.zero(), Mat::zero(f7, 1, 2), Mat::zero(f7, 1, 2)), DimensionMismatch);
  CHECK_THROWS_AS(build_T(f7.zero(), Mat::zero(f7, 1, 1), Mat::zero(f7, 2, 2)), DimensionMismatch);
}

TEST_CASE("first gadget matrix has the block pattern at every n") {
  Field f = Field::make(11, 1);
  for (std::size_t n = 1; n <= 4; ++n) {
    Mat g = gadget_first_matrix(f, n);
    CHECK(slice(g, 0, 0, 2 * n, 2 * n).is_zero());
    CHECK(slice(g, 2 * n, 2 * n, 2 * n, 2 * n).is_zero());
    CHECK(slice(g, 0, 2 * n, 2 * n, 2 * n) == Mat::identity(f, 2 * n));
    CHECK(slice(g, 2 * n, 0, n, n) == Mat::scalar(f, n, f.from_int(2)));
    CHECK(slice(g, 2 * n, n, n, n) == Mat::identity(f, n));
    CHECK(slice(g, 3 * n, 0, n, n).is_zero());
    CHECK(slice(g, 3 * n, n, n, n) == Mat::scalar(f, n, f.from_int(2)));
  }
}

TEST_CASE("classify_symmetry examples and agreement with direct checks") {
  Field f1 = Field::make(10007, 1), f2 = Field::make(10007, 2);
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng.below(3);
    Mat a2 = rng.matrix(f2, n, n), b2 = rng.matrix(f2, n, n);
    GadgetPair h = build_family_gadget(Symmetry::hermitian, a2, b2);
    CHECK(classify_symmetry(h) == Symmetry::hermitian);
    CHECK(star(h.pair[1]) == h.pair[1]);

    Mat a1 = rng.matrix(f1, n, n), b1 = rng.matrix(f1, n, n);
    GadgetPair s = build_family_gadget(Symmetry::symmetric, a1, b1);
    CHECK(classify_symmetry(s) == Symmetry::symmetric);
    CHECK(transpose(s.pair[1]) == s.pair[1]);
    GadgetPair k = build_family_gadget(Symmetry::skew, a1, b1);
    CHECK(classify_symmetry(k) == Symmetry::skew);
    CHECK(transpose(k.pair[1]) == -k.pair[1]);

    GadgetPair z = build_T(f1.zero(), a1, b1);
    if (!a1.is_zero() || !b1.is_zero()) CHECK(classify_symmetry(z) == Symmetry::none);
  }
  CHECK_THROWS_AS(build_family_gadget(Symmetry::hermitian, Mat::identity(f1, 1), Mat::identity(f1, 1)),
                  InvalidArgument);
  CHECK_THROWS_AS(build_family_gadget(Symmetry::skew, Mat::identity(f2, 1), Mat::identity(f2, 1)),
                  InvalidArgument);
}

TEST_CASE("transport_witness examples") {
  Field f7 = Field::make(7, 1);
  CongruenceWitness r = transport_witness(SimilarityWitness(m1x1(f7, 3)), f7.zero(), m1x1(f7, 1),
                                          m1x1(f7, 2));
  CHECK(r.S() == direct_sum({m1x1(f7, 5), m1x1(f7, 5), m1x1(f7, 3), m1x1(f7, 3)}, f7));

  Field f = Field::make(10007, 2);
  Rng rng(9);
  Mat a = rng.matrix(f, 3, 3), b = rng.matrix(f, 3, 3);
  CongruenceWitness id = transport_witness(SimilarityWitness(Mat::identity(f, 3)), f.one(), a, b);
  CHECK(id.S() == Mat::identity(f, 12));

  SimilarityWitness s(rng.invertible(f, 3));
  CongruenceWitness w = transport_witness(s, f.one(), a, b);
  MatTuple cd = apply_similarity(s, MatTuple::pair(a, b));
  CHECK(verify_witness(w, build_T(f.one(), a, b).pair, build_T(f.one(), cd[0], cd[1]).pair));
}

TEST_CASE("forward direction holds on sampled instances") {
  Rng rng(21);
  for (int deg : {1, 2}) {
    Field f = Field::make(10007, deg);
    std::vector<Elem> epsilons = {f.zero(), f.one(), f.from_int(-1)};
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t n = 1 + rng.below(4);
      Elem eps = epsilons[trial % 3];
      Mat a = rng.matrix(f, n, n), b = rng.matrix(f, n, n);
      SimilarityWitness s(rng.invertible(f, n));
      MatTuple cd = apply_similarity(s, MatTuple::pair(a, b));
      CongruenceWitness r = transport_witness(s, eps, a, b);
      CHECK(verify_witness(r, build_T(eps, a, b).pair, build_T(eps, cd[0], cd[1]).pair));
    }
  }
}

TEST_CASE("build_proof_triples examples") {
  Field f = Field::make(7, 1);
  ProofTriples t = build_proof_triples(f.zero(), m1x1(f, 1), m1x1(f, 1));
  CHECK(t.f[0] == Mat::identity(f, 2));
  CHECK(t.f[1] == Mat::from_ints(f, 2, 2, {2, 0, 1, 2}));
  CHECK(t.g[0] == Mat::from_ints(f, 2, 2, {2, 1, 0, 2}));
  CHECK(t.g[1] == Mat::identity(f, 2));
  CHECK(t.g[2] == Mat::zero(f, 2, 2));
  CHECK(t.p[0] == build_T(f.zero(), m1x1(f, 1), m1x1(f, 1)).pair[0]);
  CHECK(t.p[1] == transpose(t.p[0]));

  Field f2 = Field::make(13, 2);
  Rng rng(2);
  Mat a = rng.matrix(f2, 2, 2), b = rng.matrix(f2, 2, 2);
  ProofTriples h = build_proof_triples(f2.one(), a, b);
  CHECK(h.f[2] == direct_sum(a, b));
  CHECK(h.g[2] == direct_sum(star(a), star(b)));
}

TEST_CASE("extract_similarity examples") {
  Field f7 = Field::make(7, 1);
  Mat one = m1x1(f7, 1), two = m1x1(f7, 2);
  Extraction e = extract_similarity(CongruenceWitness(Mat::identity(f7, 4)), f7.zero(), one, two,
                                    one, two);
  CHECK(verify_witness(e.witness, MatTuple::pair(one, two), MatTuple::pair(one, two)));
  CHECK(e.route_used == ExtractRoute::block);
  CHECK_FALSE(e.outside_verified_envelope);

  // A witness that does not relate the gadgets is refused.
  CHECK_THROWS_AS(extract_similarity(CongruenceWitness(Mat::identity(f7, 4)), f7.zero(), one, two,
                                     two, one),
                  VerificationFailed);

  Field f3 = Field::make(3, 1);
  Extraction e3 = extract_similarity(CongruenceWitness(Mat::identity(f3, 4)), f3.zero(),
                                     m1x1(f3, 1), m1x1(f3, 2), m1x1(f3, 1), m1x1(f3, 2));
  CHECK(e3.outside_verified_envelope);
}

TEST_CASE("extract_similarity recovers P on planted instances, both routes") {
  Rng rng(77);
  for (int deg : {1, 2}) {
    Field f = Field::make(10007, deg);
    std::vector<Elem> epsilons = {f.zero(), f.one(), f.from_int(-1)};
    for (int trial = 0; trial < 12; ++trial) {
      std::size_t n = 1 + rng.below(3);
      Elem eps = epsilons[trial % 3];
      Mat a = rng.matrix(f, n, n), b = rng.matrix(f, n, n);
      SimilarityWitness s(rng.invertible(f, n));
      MatTuple cd = apply_similarity(s, MatTuple::pair(a, b));
      CongruenceWitness r = transport_witness(s, eps, a, b);
      for (ExtractRoute route : {ExtractRoute::block, ExtractRoute::decomposition}) {
        ExtractOptions opts;
        opts.route = route;
        opts.seed = std::uint64_t(trial);
        Extraction e = extract_similarity(r, eps, a, b, cd[0], cd[1], opts);
        CHECK(e.route_used == route);
        CHECK(verify_witness(e.witness, MatTuple::pair(a, b), cd));
      }
    }
  }
}

TEST_CASE("extract_similarity on non-transported witnesses") {
  // Compose a transported witness with a gadget automorphism: the F_eps
  // stabilizer contains R = diag((S*)^-1, ..., S) for S commuting with A, B.
  Field f = Field::make(10007, 1);
  Rng rng(8);
  Mat a = rng.matrix(f, 2, 2), b = rng.matrix(f, 2, 2);
  Elem eps = f.one();
  CongruenceWitness auto1 = transport_witness(SimilarityWitness(Mat::scalar(f, 2, f.from_int(5))),
                                              eps, a, b);
  SimilarityWitness s(rng.invertible(f, 2));
  MatTuple cd = apply_similarity(s, MatTuple::pair(a, b));
  CongruenceWitness composed = compose(auto1, transport_witness(s, eps, a, b));
  Extraction e = extract_similarity(composed, eps, a, b, cd[0], cd[1]);
  CHECK(verify_witness(e.witness, MatTuple::pair(a, b), cd));
}

TEST_CASE("build_P35 examples") {
  Field f = Field::make(10007, 1);
  BigPair p = build_P35(m1x1(f, 1), m1x1(f, 1));
  CHECK(p.pair.rows() == 35);
  CHECK(rank(p.m1()) == 25);
  CHECK(rank(p.m2()) == 13);
  BigPair z = build_P35(m1x1(f, 0), m1x1(f, 0));
  CHECK(rank(z.m2()) == 11);

  Rng rng(3);
  for (std::size_t n = 1; n <= 3; ++n) {
    Mat a = rng.matrix(f, n, n), b = rng.matrix(f, n, n);
    BigPair q = build_P35(a, b);
    CHECK(q.pair.rows() == 35 * n);
    CHECK(rank(q.m1()) == 25 * n);
    CHECK(rank(q.m2()) == 11 * n + rank(a) + rank(b));
    // Independence: M1 has an identity block where M2 vanishes.
    CHECK(slice(q.m2(), 0, 0, 20 * n, 20 * n).is_zero());
    CHECK(slice(q.m1(), 0, 0, 20 * n, 20 * n) == Mat::identity(f, 20 * n));
    // Layout: the tail is T_0(A,B).
    GadgetPair t = build_T(f.zero(), a, b);
    CHECK(slice(q.m1(), 31 * n, 31 * n, 4 * n, 4 * n) == t.pair[0]);
    CHECK(slice(q.m2(), 31 * n, 31 * n, 4 * n, 4 * n) == t.pair[1]);
  }

  BigPair custom = build_P35(m1x1(f, 1), m1x1(f, 2), {2, 1, 3});
  CHECK(custom.pair.rows() == 10);
}

TEST_CASE("transport_P35 relates P(A,B) and P(C,D) by plain congruence") {
  Field f = Field::make(10007, 1);
  Rng rng(13);
  for (std::size_t n = 1; n <= 2; ++n) {
    Mat a = rng.matrix(f, n, n), b = rng.matrix(f, n, n);
    SimilarityWitness s(rng.invertible(f, n));
    MatTuple cd = apply_similarity(s, MatTuple::pair(a, b));
    Mat big = transport_P35(s, a, b);
    PairClassWitness w(big, SubstitutionMatrix::identity(f));
    CHECK(verify_witness(w, build_P35(a, b).pair, build_P35(cd[0], cd[1]).pair));
  }
}

TEST_CASE("rank_separation_check examples") {
  Field f = Field::make(10007, 1);
  Rng rng(4);
  Mat a = rng.matrix(f, 1, 1), b = rng.matrix(f, 1, 1);
  CHECK(rank_separation_check(a, b, SubstitutionMatrix::identity(f)));
  CHECK_FALSE(rank_separation_check(a, b, SubstitutionMatrix(Mat::from_ints(f, 2, 2, {1, 1, 0, 1}))));
  CHECK_FALSE(rank_separation_check(a, b, SubstitutionMatrix(Mat::from_ints(f, 2, 2, {0, 1, 1, 0}))));
  CHECK(rank_separation_check(a, b, SubstitutionMatrix(Mat::from_ints(f, 2, 2, {3, 0, 0, 7}))));
}

TEST_CASE("F - F^T is nonsingular") {
  for (std::uint32_t p : {3u, 5u, 7u, 10007u}) {
    Field f = Field::make(p, 1);
    Mat g = gadget_first_matrix(f, 1);
    CHECK_FALSE(f.is_zero(det(g - transpose(g))));
    CHECK(det(g - transpose(g)) == f.one());
  }
}

TEST_CASE("sqrt_mod and absorb_scalar") {
  for (std::uint32_t p : {3u, 5u, 13u, 17u, 10007u}) {
    Field f = Field::make(p, 1);
    for (std::uint32_t v = 0; v < std::min<std::uint32_t>(p, 200); ++v) {
      Elem a = f.from_int(v);
      auto r = sqrt_mod(f, a);
      bool square = f.is_zero(a) || f.is_one(f.pow(a, (p - 1) / 2));
      CHECK(r.has_value() == square);
      if (r) CHECK(f.mul(*r, *r) == a);
    }
  }
  Field f = Field::make(7, 1);
  MatTuple t = MatTuple::pair(Mat::from_ints(f, 2, 2, {1, 2, 3, 4}), Mat::identity(f, 2));
  auto sq = absorb_scalar(t, f.from_int(2));  // 2 = 3^2 mod 7
  REQUIRE(sq.has_value());
  CHECK_FALSE(sq->lifted);
  CHECK_FALSE(absorb_scalar(t, f.from_int(3)).has_value());  // 3 is a nonsquare mod 7
  auto ext = absorb_scalar(t, f.from_int(3), true);
  REQUIRE(ext.has_value());
  CHECK(ext->lifted);
  CHECK(ext->field.degree() == 2);
}
