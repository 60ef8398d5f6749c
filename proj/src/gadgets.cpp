#include "wildpairs/gadgets.hpp"

#include "wildpairs/errors.hpp"

namespace wildpairs {

namespace {

void require_square_pair(const Mat& a, const Mat& b, const char* what) {
  if (!a.is_square() || !b.is_square())
    throw DimensionMismatch(std::string(what) + ": A and B must be square");
  if (a.rows() != b.rows()) throw DimensionMismatch(std::string(what) + ": A and B differ in size");
  require_same_field(a, b, what);
}

Mat diag2(const Mat& x, const Mat& y) { return direct_sum(x, y); }

// [[a*I, b*I], [c*I, d*I]] in n x n blocks.
Mat scalar_blocks(const Field& f, std::size_t n, std::int64_t a, std::int64_t b, std::int64_t c,
                  std::int64_t d) {
  auto s = [&](std::int64_t v) { return Mat::scalar(f, n, f.from_int(v)); };
  return block_assemble({{s(a), s(b)}, {s(c), s(d)}});
}

Mat antidiag(const Mat& upper, const Mat& lower) {
  const Field& f = upper.field();
  return block_assemble({{Mat::zero(f, upper.rows(), lower.cols()), upper},
                         {lower, Mat::zero(f, lower.rows(), upper.cols())}});
}

Mat gadget_second_matrix(Elem eps, const Mat& a, const Mat& b) {
  return antidiag(diag2(a, b), diag2(scale(eps, star(a)), scale(eps, star(b))));
}

}  // namespace

Mat gadget_first_matrix(const Field& f, std::size_t n) {
  return antidiag(Mat::identity(f, 2 * n), scalar_blocks(f, n, 2, 1, 0, 2));
}

GadgetPair build_T(Elem eps, const Mat& a, const Mat& b) {
  require_square_pair(a, b, "build_T");
  const Field& f = a.field();
  return GadgetPair{MatTuple::pair(gadget_first_matrix(f, a.rows()), gadget_second_matrix(eps, a, b)),
                    eps, a.rows(), "T"};
}

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::hermitian: return "hermitian";
    case Symmetry::symmetric: return "symmetric";
    case Symmetry::skew: return "skew";
    case Symmetry::none: return "none";
  }
  return "none";
}

Symmetry classify_symmetry(const GadgetPair& g) {
  const Mat& m = g.pair[1];
  if (!m.is_square()) return Symmetry::none;
  if (m.field().has_nontrivial_involution() && star(m) == m) return Symmetry::hermitian;
  Mat mt = transpose(m);
  if (mt == m) return Symmetry::symmetric;
  if (mt == -m) return Symmetry::skew;
  return Symmetry::none;
}

GadgetPair build_family_gadget(Symmetry family, const Mat& a, const Mat& b) {
  const Field& f = a.field();
  switch (family) {
    case Symmetry::hermitian:
      if (!f.has_nontrivial_involution())
        throw InvalidArgument("hermitian gadgets need a field with a nonidentity involution (deg 2)");
      return build_T(f.one(), a, b);
    case Symmetry::symmetric:
    case Symmetry::skew:
      if (f.has_nontrivial_involution())
        throw InvalidArgument(to_string(family) + " gadgets need the identity involution (deg 1)");
      return build_T(family == Symmetry::symmetric ? f.one() : f.from_int(-1), a, b);
    case Symmetry::none: break;
  }
  throw InvalidArgument("build_family_gadget: no such family");
}

CongruenceWitness transport_witness(const SimilarityWitness& s, Elem eps, const Mat& a,
                                    const Mat& b) {
  require_square_pair(a, b, "transport_witness");
  if (s.S().rows() != a.rows()) throw DimensionMismatch("transport_witness: S has the wrong size");
  Mat sinv_star = inverse(star(s.S()));
  CongruenceWitness r(direct_sum({sinv_star, sinv_star, s.S(), s.S()}, a.field()));
  MatTuple cd = apply_similarity(s, MatTuple::pair(a, b));
  if (!verify_witness(r, build_T(eps, a, b).pair, build_T(eps, cd[0], cd[1]).pair))
    throw VerificationFailed("transport_witness: R* T R != T(C,D)");
  return r;
}

Mat transport_bilinear(const SimilarityWitness& s, const Mat& a, const Mat& b) {
  require_square_pair(a, b, "transport_bilinear");
  if (s.S().rows() != a.rows()) throw DimensionMismatch("transport_bilinear: S has the wrong size");
  const Field& f = a.field();
  Mat sinv_t = inverse(transpose(s.S()));
  Mat r = direct_sum({sinv_t, sinv_t, s.S(), s.S()}, f);
  MatTuple cd = apply_similarity(s, MatTuple::pair(a, b));
  MatTuple from = build_T(f.zero(), a, b).pair, to = build_T(f.zero(), cd[0], cd[1]).pair;
  PairClassWitness w(r, SubstitutionMatrix::identity(f));
  if (!verify_witness(w, from, to)) throw VerificationFailed("transport_bilinear: replay failed");
  return r;
}

ProofTriples build_proof_triples(Elem eps, const Mat& a, const Mat& b) {
  require_square_pair(a, b, "build_proof_triples");
  const Field& f = a.field();
  const std::size_t n = a.rows();
  Mat first = gadget_first_matrix(f, n);
  Mat second = gadget_second_matrix(eps, a, b);
  ProofTriples out{
      MatTuple({first, star(first), second}),
      MatTuple({Mat::identity(f, 2 * n), scalar_blocks(f, n, 2, 0, 1, 2), diag2(a, b)}),
      MatTuple({scalar_blocks(f, n, 2, 1, 0, 2), Mat::identity(f, 2 * n),
                diag2(scale(eps, star(a)), scale(eps, star(b)))}),
  };
  for (std::size_t i = 0; i < 3; ++i)
    if (!(out.p[i] == antidiag(out.f[i], out.g[i])))
      throw VerificationFailed("build_proof_triples: P is not the block assembly of F and G");
  return out;
}

std::string to_string(ExtractRoute r) {
  switch (r) {
    case ExtractRoute::automatic: return "auto";
    case ExtractRoute::block: return "block";
    case ExtractRoute::decomposition: return "decomposition";
  }
  return "auto";
}

namespace {

// Reads P off a morphism F(A,B) -> F(C,D): its two vertex maps agree (the
// first matrices are identities) and are [[P, 0], [Q, P]].
std::optional<SimilarityWitness> read_off_p(const Morphism& x, const Mat& a, const Mat& b,
                                            const Mat& c, const Mat& d) {
  const std::size_t n = a.rows();
  if (!(x.in_map == x.out_map)) return std::nullopt;
  Mat p = slice(x.in_map, 0, 0, n, n);
  if (!is_invertible(p)) return std::nullopt;
  if (!(p * a == c * p) || !(p * b == d * p)) return std::nullopt;
  SimilarityWitness w(inverse(p));
  if (!verify_witness(w, MatTuple::pair(a, b), MatTuple::pair(c, d))) return std::nullopt;
  return w;
}

std::optional<SimilarityWitness> block_route(const CongruenceWitness& r, const Mat& a,
                                             const Mat& b, const Mat& c, const Mat& d) {
  // R* P(A,B) R = P(C,D) reads as the morphism (in = R^-1, out = R*). F sits
  // in rows [0, 2n) and columns [2n, 4n) of every P_i.
  const std::size_t n = a.rows();
  Mat rinv = inverse(r.S());
  Mat rstar = star(r.S());
  Morphism x{slice(rinv, 2 * n, 2 * n, 2 * n, 2 * n), slice(rstar, 0, 0, 2 * n, 2 * n)};
  return read_off_p(x, a, b, c, d);
}

std::optional<SimilarityWitness> decomposition_route(const MatTuple& f_ab, const MatTuple& f_cd,
                                                     const Mat& a, const Mat& b, const Mat& c,
                                                     const Mat& d, const ExtractOptions& opts) {
  Decomposition dab = krull_schmidt(f_ab, {opts.seed, 64});
  Decomposition dcd = krull_schmidt(f_cd, {opts.seed ^ 0x5bd1e995ULL, 64});
  auto w = match_decompositions(f_ab, dab, f_cd, dcd, opts.decide);
  if (!w) return std::nullopt;
  // R F S = F'  is the morphism (in = S^-1, out = R).
  return read_off_p(Morphism{inverse(w->S()), w->R()}, a, b, c, d);
}

}  // namespace

Extraction extract_similarity(const CongruenceWitness& r, Elem eps, const Mat& a, const Mat& b,
                              const Mat& c, const Mat& d, const ExtractOptions& opts) {
  require_square_pair(a, b, "extract_similarity");
  require_square_pair(c, d, "extract_similarity");
  if (a.rows() != c.rows()) throw DimensionMismatch("extract_similarity: pairs differ in size");
  GadgetPair t_ab = build_T(eps, a, b), t_cd = build_T(eps, c, d);
  if (!verify_witness(r, t_ab.pair, t_cd.pair))
    throw VerificationFailed("extract_similarity: R is not a *congruence between the gadgets");

  const Field& f = a.field();
  const bool envelope = f.p() == 3;
  if (opts.route != ExtractRoute::decomposition) {
    if (auto w = block_route(r, a, b, c, d))
      return Extraction{*w, ExtractRoute::block, envelope};
    if (opts.route == ExtractRoute::block)
      throw SearchExhausted("extract_similarity: block route found no invertible P");
  }
  ProofTriples ab = build_proof_triples(eps, a, b), cd = build_proof_triples(eps, c, d);
  std::optional<SimilarityWitness> w;
  try {
    w = decomposition_route(ab.f, cd.f, a, b, c, d, opts);
  } catch (const CharacteristicTooSmall& e) {
    throw SearchExhausted(std::string("extract_similarity: decomposition route unavailable: ") +
                          e.what());
  } catch (const FieldTooSmall& e) {
    throw SearchExhausted(std::string("extract_similarity: decomposition route unavailable: ") +
                          e.what());
  }
  if (!w) throw SearchExhausted("extract_similarity: summand matching failed; retry with a new seed");
  return Extraction{*w, ExtractRoute::decomposition, envelope};
}

BigPair build_P35(const Mat& a, const Mat& b, const Multiplicities& mult) {
  require_square_pair(a, b, "build_P35");
  const Field& f = a.field();
  const std::size_t n = a.rows();
  std::vector<Mat> first, second;
  auto push = [&](const Mat& x, const Mat& y) {
    first.push_back(x);
    second.push_back(y);
  };
  if (mult.id) push(Mat::identity(f, mult.id * n), Mat::zero(f, mult.id * n, mult.id * n));
  if (mult.zero) push(Mat::zero(f, mult.zero * n, mult.zero * n), Mat::identity(f, mult.zero * n));
  for (std::size_t k = 0; k < mult.ones; ++k) push(Mat::identity(f, n), Mat::identity(f, n));
  GadgetPair t = build_T(f.zero(), a, b);
  push(t.pair[0], t.pair[1]);
  return BigPair{MatTuple::pair(direct_sum(first, f), direct_sum(second, f)), n, mult};
}

Mat transport_P35(const SimilarityWitness& s, const Mat& a, const Mat& b,
                  const Multiplicities& mult) {
  const Field& f = a.field();
  const std::size_t pad = (mult.id + mult.zero + mult.ones) * a.rows();
  return direct_sum(Mat::identity(f, pad), transport_bilinear(s, a, b));
}

bool rank_separation_check(const Mat& a, const Mat& b, const SubstitutionMatrix& r,
                           const Multiplicities& mult) {
  BigPair p = build_P35(a, b, mult);
  const Mat& m1 = p.m1();
  const Mat& m2 = p.m2();
  bool first = rank(scale(r(0, 0), m1) + scale(r(0, 1), m2)) == rank(m1);
  bool second = rank(scale(r(1, 0), m1) + scale(r(1, 1), m2)) == rank(m2);
  return first && second;
}

std::optional<Elem> sqrt_mod(const Field& f, Elem a) {
  if (f.degree() != 1) throw InvalidArgument("sqrt_mod: prime fields only");
  if (f.is_zero(a)) return a;
  const std::uint64_t p = f.p();
  if (!f.is_one(f.pow(a, (p - 1) / 2))) return std::nullopt;
  // Tonelli-Shanks.
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) q /= 2, ++s;
  Elem z = f.from_int(2);
  while (f.is_one(f.pow(z, (p - 1) / 2))) z = f.add(z, f.one());
  Elem c = f.pow(z, q), x = f.pow(a, (q + 1) / 2), t = f.pow(a, q);
  std::uint64_t m = s;
  while (!f.is_one(t)) {
    std::uint64_t i = 0;
    Elem tt = t;
    while (!f.is_one(tt)) tt = f.mul(tt, tt), ++i;
    Elem bb = c;
    for (std::uint64_t k = 0; k + 1 < m - i; ++k) bb = f.mul(bb, bb);
    x = f.mul(x, bb);
    c = f.mul(bb, bb);
    t = f.mul(t, c);
    m = i;
  }
  return x;
}

Mat lift_to_extension(const Mat& m, const Field& ext) {
  if (m.field().degree() != 1 || ext.degree() != 2 || ext.p() != m.field().p())
    throw FieldMismatch("lift_to_extension: needs F_p -> F_{p^2}");
  Mat out(ext, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Elem{m(i, j).c0, 0};
  return out;
}

std::optional<ScalarAbsorption> absorb_scalar(const MatTuple& t, Elem lambda,
                                              bool allow_extension) {
  const Field& f = t.field();
  if (f.degree() != 1) throw InvalidArgument("absorb_scalar: prime fields only");
  if (!t.is_square()) throw DimensionMismatch("absorb_scalar: square tuples only");
  if (f.is_zero(lambda)) throw DivisionByZero("absorb_scalar: lambda = 0");
  const std::size_t n = t.rows();
  Elem target = f.inv(lambda);

  std::optional<ScalarAbsorption> out;
  std::vector<Mat> scaled, original;
  if (auto c = sqrt_mod(f, target)) {
    out = ScalarAbsorption{f, Mat::scalar(f, n, *c), false};
    for (const auto& m : t.mats()) {
      scaled.push_back(scale(lambda, m));
      original.push_back(m);
    }
  } else if (allow_extension) {
    // target = d * mu^2 for the nonresidue d = t^2, so sqrt(target) = mu * t.
    Field ext = Field::make(f.p(), 2);
    Elem d = f.from_int(*ext.nonresidue());
    auto mu = sqrt_mod(f, f.div(target, d));
    if (!mu) throw VerificationFailed("absorb_scalar: nonresidue quotient is not a square");
    Elem root = ext.mul(Elem{mu->c0, 0}, ext.gen());
    out = ScalarAbsorption{ext, Mat::scalar(ext, n, root), true};
    for (const auto& m : t.mats()) {
      Mat lifted = lift_to_extension(m, ext);
      scaled.push_back(scale(Elem{lambda.c0, 0}, lifted));
      original.push_back(lifted);
    }
  } else {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < scaled.size(); ++i)
    if (!(transpose(out->s) * scaled[i] * out->s == original[i]))
      throw VerificationFailed("absorb_scalar: scaling congruence failed replay");
  return out;
}

}  // namespace wildpairs
