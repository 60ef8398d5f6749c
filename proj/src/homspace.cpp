#include "wildpairs/homspace.hpp"

#include <algorithm>
#include <cmath>

#include "wildpairs/poly.hpp"
#include "wildpairs/rng.hpp"

namespace wildpairs {

namespace {

Mat reshape(const Field& f, std::span<const Elem> v, std::size_t offset, std::size_t rows,
            std::size_t cols) {
  Mat m(f, rows, cols);
  for (std::size_t k = 0; k < rows * cols; ++k) m.data()[k] = v[offset + k];
  return m;
}

void require_same_length(const MatTuple& a, const MatTuple& b, const char* what) {
  if (a.size() != b.size())
    throw DimensionMismatch(std::string(what) + ": tuples of different length");
  if (!(a.field() == b.field())) throw FieldMismatch(std::string(what) + ": different fields");
}

double failure_bound(std::size_t degree, std::uint64_t q, std::size_t trials) {
  double per_trial = std::min(1.0, double(degree) / double(q));
  return std::pow(per_trial, double(trials));
}

Mat random_combination(const Field& f, const std::vector<Mat>& basis, std::size_t rows,
                       std::size_t cols, Rng& rng) {
  Mat x(f, rows, cols);
  for (const auto& b : basis) x = x + scale(rng.scalar(f), b);
  return x;
}

Morphism compose(const Morphism& second, const Morphism& first) {
  return {second.in_map * first.in_map, second.out_map * first.out_map};
}

Morphism apply_poly(const Poly& g, const Morphism& x) {
  return {eval(g, x.in_map), eval(g, x.out_map)};
}

}  // namespace

Morphism HomBasis::combine(std::span<const Elem> coeffs) const {
  const Field& f = source.field();
  if (coeffs.size() != basis.size()) throw DimensionMismatch("combine: coefficient count");
  Morphism x{Mat(f, target.cols(), source.cols()), Mat(f, target.rows(), source.rows())};
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (f.is_zero(coeffs[k])) continue;
    x.in_map = x.in_map + scale(coeffs[k], basis[k].in_map);
    x.out_map = x.out_map + scale(coeffs[k], basis[k].out_map);
  }
  return x;
}

bool is_morphism(const Morphism& x, const MatTuple& source, const MatTuple& target) {
  if (source.size() != target.size()) return false;
  if (x.in_map.rows() != target.cols() || x.in_map.cols() != source.cols()) return false;
  if (x.out_map.rows() != target.rows() || x.out_map.cols() != source.rows()) return false;
  for (std::size_t i = 0; i < source.size(); ++i)
    if (!(x.out_map * source[i] == target[i] * x.in_map)) return false;
  return true;
}

HomBasis hom_basis(const MatTuple& source, const MatTuple& target) {
  require_same_length(source, target, "hom_basis");
  const Field& f = source.field();
  const std::size_t m = source.rows(), n = source.cols();
  const std::size_t m2 = target.rows(), n2 = target.cols();
  const std::size_t in_vars = n2 * n, out_off = in_vars, vars = in_vars + m2 * m;
  // out_map * A_i - B_i * in_map = 0, one equation per (i, r, c).
  Mat coeffs(f, source.size() * m2 * n, vars);
  std::size_t row = 0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Mat& a = source[i];
    const Mat& b = target[i];
    for (std::size_t r = 0; r < m2; ++r)
      for (std::size_t c = 0; c < n; ++c, ++row) {
        for (std::size_t k = 0; k < m; ++k) {
          Elem& e = coeffs(row, out_off + r * m + k);
          e = f.add(e, a(k, c));
        }
        for (std::size_t k = 0; k < n2; ++k) {
          Elem& e = coeffs(row, k * n + c);
          e = f.sub(e, b(r, k));
        }
      }
  }
  HomBasis hb{source, target, {}};
  for (const auto& v : solve_homogeneous(coeffs))
    hb.basis.push_back({reshape(f, v, 0, n2, n), reshape(f, v, out_off, m2, m)});
  return hb;
}

std::vector<Mat> intertwiner_basis(const MatTuple& source, const MatTuple& target) {
  require_same_length(source, target, "intertwiner_basis");
  if (!source.is_square() || !target.is_square())
    throw DimensionMismatch("intertwiner_basis: tuples must be square");
  const Field& f = source.field();
  const std::size_t n = source.rows(), n2 = target.rows();
  // X * A_i - B_i * X = 0 with X of size n2 x n.
  Mat coeffs(f, source.size() * n2 * n, n2 * n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < source.size(); ++i)
    for (std::size_t r = 0; r < n2; ++r)
      for (std::size_t c = 0; c < n; ++c, ++row) {
        for (std::size_t k = 0; k < n; ++k) {
          Elem& e = coeffs(row, r * n + k);
          e = f.add(e, source[i](k, c));
        }
        for (std::size_t k = 0; k < n2; ++k) {
          Elem& e = coeffs(row, k * n + c);
          e = f.sub(e, target[i](r, k));
        }
      }
  std::vector<Mat> out;
  for (const auto& v : solve_homogeneous(coeffs)) out.push_back(reshape(f, v, 0, n2, n));
  return out;
}

Decision<EquivalenceWitness> decide_equivalence(const MatTuple& t, const MatTuple& u,
                                                const DecideOptions& opts) {
  require_same_length(t, u, "decide_equivalence");
  Decision<EquivalenceWitness> out;
  auto exact_no = [&](std::string why, std::size_t hom_dim) {
    out.certificate = NoInstanceCertificate{true, std::move(why), 0, hom_dim, 0.0};
    return out;
  };
  if (t.rows() != u.rows() || t.cols() != u.cols()) return exact_no("tuple sizes differ", 0);
  const Field& f = t.field();
  HomBasis forward = hom_basis(t, u);
  std::size_t back = hom_basis(u, t).dim();
  std::size_t end_t = end_ring(t).dim(), end_u = end_ring(u).dim();
  if (forward.dim() != back || forward.dim() != end_t || end_t != end_u)
    return exact_no("Hom dimensions differ: dim Hom(T,U)=" + std::to_string(forward.dim()) +
                        ", dim Hom(U,T)=" + std::to_string(back) + ", dim End(T)=" +
                        std::to_string(end_t) + ", dim End(U)=" + std::to_string(end_u),
                    forward.dim());
  const std::size_t n = t.cols(), m = t.rows();
  if (n + m == 0) {
    out.witness = EquivalenceWitness(Mat(f, 0, 0), Mat(f, 0, 0));
    return out;
  }
  if (forward.dim() == 0) return exact_no("Hom(T,U) is zero", 0);
  if (f.order() < 100)
    throw FieldTooSmall("decide_equivalence: randomized search needs at least 100 field elements");

  Rng rng(opts.seed);
  Vec coeffs(forward.dim());
  for (std::size_t trial = 0; trial < opts.trials; ++trial) {
    out.trials_used = trial + 1;
    for (auto& c : coeffs) c = rng.scalar(f);
    Morphism x = forward.combine(coeffs);
    if (!is_invertible(x.in_map) || !is_invertible(x.out_map)) continue;
    EquivalenceWitness w(x.out_map, inverse(x.in_map));
    if (!verify_witness(w, t, u))
      throw VerificationFailed("decide_equivalence: invertible morphism failed replay");
    out.witness = std::move(w);
    return out;
  }
  out.certificate = NoInstanceCertificate{
      false, "no invertible element among random samples of Hom(T,U)", opts.trials,
      forward.dim(), failure_bound(n + m, f.order(), opts.trials)};
  return out;
}

Decision<SimilarityWitness> decide_similarity(const MatTuple& t, const MatTuple& u,
                                              const DecideOptions& opts) {
  require_same_length(t, u, "decide_similarity");
  if (!t.is_square() || !u.is_square())
    throw DimensionMismatch("decide_similarity: tuples must be square");
  Decision<SimilarityWitness> out;
  auto exact_no = [&](std::string why, std::size_t hom_dim) {
    out.certificate = NoInstanceCertificate{true, std::move(why), 0, hom_dim, 0.0};
    return out;
  };
  if (t.rows() != u.rows()) return exact_no("matrix sizes differ", 0);
  const Field& f = t.field();
  auto forward = intertwiner_basis(t, u);
  std::size_t back = intertwiner_basis(u, t).size();
  std::size_t end_t = intertwiner_basis(t, t).size(), end_u = intertwiner_basis(u, u).size();
  if (forward.size() != back || forward.size() != end_t || end_t != end_u)
    return exact_no("intertwiner dimensions differ: dim Hom(T,U)=" + std::to_string(forward.size()) +
                        ", dim Hom(U,T)=" + std::to_string(back) + ", dim End(T)=" +
                        std::to_string(end_t) + ", dim End(U)=" + std::to_string(end_u),
                    forward.size());
  const std::size_t n = t.rows();
  if (n == 0) {
    out.witness = SimilarityWitness(Mat(f, 0, 0));
    return out;
  }
  if (forward.empty()) return exact_no("no nonzero intertwiner", 0);
  if (f.order() < 100)
    throw FieldTooSmall("decide_similarity: randomized search needs at least 100 field elements");

  Rng rng(opts.seed);
  for (std::size_t trial = 0; trial < opts.trials; ++trial) {
    out.trials_used = trial + 1;
    Mat x = random_combination(f, forward, n, n, rng);
    if (!is_invertible(x)) continue;
    // X A = C X  =>  X^-1 is the similarity S with S^-1 A S = C.
    SimilarityWitness w(inverse(x));
    if (!verify_witness(w, t, u))
      throw VerificationFailed("decide_similarity: invertible intertwiner failed replay");
    out.witness = std::move(w);
    return out;
  }
  out.certificate = NoInstanceCertificate{false, "no invertible intertwiner among random samples",
                                          opts.trials, forward.size(),
                                          failure_bound(n, f.order(), opts.trials)};
  return out;
}

EndRadical radical_of_end(const MatTuple& t) {
  const Field& f = t.field();
  HomBasis end = end_ring(t);
  const std::size_t d = end.dim(), n = t.cols(), m = t.rows();
  if (f.p() <= d || f.p() <= n + m)
    throw CharacteristicTooSmall("radical_of_end: need p > dim End = " + std::to_string(d) +
                                 " and p > n + m = " + std::to_string(n + m) +
                                 "; raise p");
  Mat gram(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Morphism xy = compose(end.basis[i], end.basis[j]);
      Elem tr = f.add(trace(xy.in_map), trace(xy.out_map));
      gram(i, j) = tr;
      gram(j, i) = tr;
    }
  EndRadical out{end, {}};
  for (const auto& coords : solve_homogeneous(gram)) {
    Morphism x = end.combine(coords);
    if (!power(x.in_map, n).is_zero() || !power(x.out_map, m).is_zero())
      throw VerificationFailed("radical_of_end: trace-form radical element is not nilpotent");
    out.radical.push_back(std::move(x));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Decomposition::extents() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& s : summands) out.emplace_back(s.rows(), s.cols());
  return out;
}

MatTuple Decomposition::assembled() const {
  MatTuple acc = summands.front();
  for (std::size_t k = 1; k < summands.size(); ++k) acc = tuple_direct_sum(acc, summands[k]);
  return acc;
}

std::optional<Decomposition> fitting_split(const MatTuple& t, const Morphism& e) {
  if (!is_morphism(e, t, t)) throw InvalidArgument("fitting_split: not an endomorphism");
  const std::size_t n = t.cols(), m = t.rows(), k = std::max(n, m);
  Mat e_in = power(e.in_map, k), e_out = power(e.out_map, k);
  if (e_in.is_zero() && e_out.is_zero()) return std::nullopt;
  Mat ker_in = kernel(e_in), ker_out = kernel(e_out);
  if (ker_in.cols() == 0 && ker_out.cols() == 0) return std::nullopt;
  Mat s = hstack(ker_in, image(e_in));
  Mat q = hstack(ker_out, image(e_out));
  Mat r = inverse(q);
  const std::size_t kn = ker_in.cols(), km = ker_out.cols();
  std::vector<Mat> lower, upper;
  for (const auto& a : t.mats()) {
    Mat b = r * a * s;
    if (!slice(b, 0, kn, km, n - kn).is_zero() || !slice(b, km, 0, m - km, kn).is_zero())
      throw VerificationFailed("fitting_split: blocks did not separate");
    lower.push_back(slice(b, 0, 0, km, kn));
    upper.push_back(slice(b, km, kn, m - km, n - kn));
  }
  return Decomposition{{MatTuple(std::move(lower)), MatTuple(std::move(upper))},
                       EquivalenceWitness(std::move(r), std::move(s)),
                       {}};
}

namespace {

struct Piece {
  MatTuple tuple;
  Mat in_cols;   // n x n_k, basis of this piece's input space
  Mat out_cols;  // m x m_k
};

struct Leaf {
  Piece piece;
  SummandCertificate cert;
};

// Returns the split of `piece` or a certificate that it is indecomposable.
std::variant<std::pair<Piece, Piece>, SummandCertificate> split_or_certify(
    const Piece& piece, Rng& rng, std::size_t random_candidates) {
  const Field& f = piece.tuple.field();
  EndRadical er = radical_of_end(piece.tuple);
  SummandCertificate cert{er.end.dim(), er.radical.size(), er.quotient_dim()};
  if (er.quotient_dim() == 1) return cert;

  auto children = [&](const Decomposition& d) {
    // The local witness has R = Q^-1; new bases are in_cols * S, out_cols * Q.
    Mat s = piece.in_cols * d.witness.S();
    Mat q = piece.out_cols * inverse(d.witness.R());
    std::size_t kn = d.summands[0].cols(), km = d.summands[0].rows();
    Piece a{d.summands[0], slice(s, 0, 0, s.rows(), kn), slice(q, 0, 0, q.rows(), km)};
    Piece b{d.summands[1], slice(s, 0, kn, s.rows(), s.cols() - kn),
            slice(q, 0, km, q.rows(), q.cols() - km)};
    return std::make_pair(std::move(a), std::move(b));
  };

  for (const auto& x : er.end.basis)
    if (auto d = fitting_split(piece.tuple, x)) return children(*d);

  // No basis element splits directly. Shift by a polynomial: if the
  // characteristic polynomial of x has coprime factors g*h, then g(x) has
  // a nontrivial Fitting decomposition.
  std::vector<Morphism> candidates = er.end.basis;
  Vec coeffs(er.end.dim());
  for (std::size_t k = 0; k < random_candidates; ++k) {
    for (auto& c : coeffs) c = rng.scalar(f);
    candidates.push_back(er.end.combine(coeffs));
  }
  for (const auto& x : candidates) {
    Poly chi = charpoly(x.in_map) * charpoly(x.out_map);
    if (auto g = proper_factor(chi, rng)) {
      auto d = fitting_split(piece.tuple, apply_poly(*g, x));
      if (!d) throw VerificationFailed("krull_schmidt: polynomial shift failed to split");
      return children(*d);
    }
    Poly rad = squarefree_part(chi);
    // End/rad contains the field F[x] of dimension deg rad; if that is all
    // of End/rad, End is local.
    if (std::size_t(rad.degree()) == er.quotient_dim() && is_irreducible(rad)) return cert;
  }
  throw SearchExhausted("krull_schmidt: could not split or certify a summand of size " +
                        std::to_string(piece.tuple.rows()) + "x" +
                        std::to_string(piece.tuple.cols()));
}

}  // namespace

Decomposition krull_schmidt(const MatTuple& t, const KrullSchmidtOptions& opts) {
  const Field& f = t.field();
  const std::size_t m = t.rows(), n = t.cols();
  if (std::uint64_t(f.p()) <= std::uint64_t(m) * m + std::uint64_t(n) * n)
    throw CharacteristicTooSmall("krull_schmidt: need p > m^2 + n^2 = " +
                                 std::to_string(m * m + n * n) + "; raise p");
  Rng rng(opts.seed);
  std::vector<Piece> work{{t, Mat::identity(f, n), Mat::identity(f, m)}};
  std::vector<Leaf> leaves;
  while (!work.empty()) {
    Piece piece = std::move(work.back());
    work.pop_back();
    if (piece.tuple.rows() + piece.tuple.cols() == 0) continue;
    auto result = split_or_certify(piece, rng, opts.random_candidates);
    if (auto* cert = std::get_if<SummandCertificate>(&result)) {
      leaves.push_back({std::move(piece), *cert});
    } else {
      auto& [a, b] = std::get<std::pair<Piece, Piece>>(result);
      // Pushed in reverse so that the kernel part is processed first.
      work.push_back(std::move(b));
      work.push_back(std::move(a));
    }
  }
  std::stable_sort(leaves.begin(), leaves.end(), [](const Leaf& a, const Leaf& b) {
    return std::pair(a.piece.tuple.rows(), a.piece.tuple.cols()) <
           std::pair(b.piece.tuple.rows(), b.piece.tuple.cols());
  });

  Mat s(f, n, 0), q(f, m, 0);
  std::vector<MatTuple> summands;
  std::vector<SummandCertificate> certs;
  for (auto& leaf : leaves) {
    s = hstack(s, leaf.piece.in_cols);
    q = hstack(q, leaf.piece.out_cols);
    summands.push_back(std::move(leaf.piece.tuple));
    certs.push_back(leaf.cert);
  }
  if (summands.empty()) {
    // Only the 0x0 tuple has no summands; represent it by itself.
    summands.push_back(t);
    certs.push_back({0, 0, 0});
  }
  Decomposition d{std::move(summands), EquivalenceWitness(inverse(q), std::move(s)),
                  std::move(certs)};
  if (!(apply_equivalence(d.witness, t) == d.assembled()))
    throw VerificationFailed("krull_schmidt: witness does not reproduce the direct sum");
  return d;
}

std::optional<EquivalenceWitness> match_decompositions(const MatTuple& t, const Decomposition& dt,
                                                       const MatTuple& u, const Decomposition& du,
                                                       const DecideOptions& opts) {
  if (t.rows() != u.rows() || t.cols() != u.cols() || dt.summands.size() != du.summands.size())
    return std::nullopt;
  const Field& f = t.field();
  const std::size_t n = t.cols(), m = t.rows();
  // Offsets of each summand inside the assembled direct sum.
  auto offsets = [](const Decomposition& d) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t r = 0, c = 0;
    for (const auto& s : d.summands) {
      out.emplace_back(r, c);
      r += s.rows();
      c += s.cols();
    }
    return out;
  };
  auto off_t = offsets(dt), off_u = offsets(du);
  Mat s_u = du.witness.S(), q_u = inverse(du.witness.R());
  Mat s_t_inv = inverse(dt.witness.S());
  const Mat& r_t = dt.witness.R();

  Mat x_in(f, n, n), x_out(f, m, m);
  std::vector<bool> used(du.summands.size(), false);
  for (std::size_t k = 0; k < dt.summands.size(); ++k) {
    const MatTuple& a = dt.summands[k];
    bool matched = false;
    for (std::size_t l = 0; l < du.summands.size() && !matched; ++l) {
      const MatTuple& b = du.summands[l];
      if (used[l] || a.rows() != b.rows() || a.cols() != b.cols()) continue;
      DecideOptions sub = opts;
      sub.seed = trial_seed(opts.seed, k * du.summands.size() + l);
      auto dec = decide_equivalence(a, b, sub);
      if (!dec.witness) continue;
      // Local morphism a -> b: out = R_kl, in = S_kl^-1.
      Mat loc_in = inverse(dec.witness->S()), loc_out = dec.witness->R();
      x_in = x_in + slice(s_u, 0, off_u[l].second, n, b.cols()) * loc_in *
                        slice(s_t_inv, off_t[k].second, 0, a.cols(), n);
      x_out = x_out + slice(q_u, 0, off_u[l].first, m, b.rows()) * loc_out *
                          slice(r_t, off_t[k].first, 0, a.rows(), m);
      used[l] = matched = true;
    }
    if (!matched) return std::nullopt;
  }
  EquivalenceWitness w(x_out, inverse(x_in));
  if (!verify_witness(w, t, u))
    throw VerificationFailed("match_decompositions: assembled witness failed replay");
  return w;
}

}  // namespace wildpairs
