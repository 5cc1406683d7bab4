#include "dca/end_dga.hpp"

#include <algorithm>

namespace dca {

namespace {

int summand_weight(const ProjectiveComplex& C, int n, int i) {
  return C.terms[n][i].shift;
}

}  // namespace

EndomorphismDga end_dga(const ProjectiveComplex& C) {
  EndomorphismDga E;
  E.C = C;
  const TruncatedAlgebra& A = *C.A;
  int N = (int)C.terms.size() - 1;
  E.deg_trust = C.finished ? 2 * N + 1 : N - 1;

  // All basis maps terms[q] -> terms[q - j]; the Adams weight of a map is
  // (source shift) - (target shift) - (monomial weight).
  int shift_gap = 0;  // max shift difference, for the completeness threshold
  for (int q = 0; q <= N; ++q) {
    for (int qd = 0; qd <= N; ++qd) {
      int j = q - qd;
      for (int b = 0; b < (int)C.terms[q].size(); ++b) {
        for (int a = 0; a < (int)C.terms[qd].size(); ++a) {
          const Summand& src = C.terms[q][b];
          const Summand& dst = C.terms[qd][a];
          shift_gap = std::max(shift_gap, src.shift - dst.shift);
          for (int wm = 0; wm <= A.w_max; ++wm) {
            const std::vector<int>& blk = A.block(dst.vertex, src.vertex, wm);
            if (blk.empty()) continue;
            BlockKey k{j, src.shift - dst.shift - wm};
            for (int mon : blk) {
              int idx = (int)E.basis[k].size();
              E.basis[k].push_back(EndBasisElem{q, a, b, mon});
              E.index[k][{q, a, b, mon}] = idx;
            }
          }
        }
      }
    }
  }
  E.w_trust_min = shift_gap - A.w_max;
  for (const auto& [k, v] : E.basis) {
    E.cx.dims[k] = (int)v.size();
    if (k.w < E.w_trust_min) E.cx.incomplete[k] = true;
    std::vector<std::string>& labels = E.cx.labels[k];
    for (const EndBasisElem& e : v)
      labels.push_back("[" + std::to_string(-e.q) + "]" + std::to_string(e.b) + "->" +
                       std::to_string(e.a) + ":" + A.mon_label(e.mon));
  }

  // Differential d(f) = d_C o f - (-1)^{|f|} f o d_C.
  for (const auto& [k, v] : E.basis) {
    BlockKey next{k.deg + 1, k.w};
    if (!E.cx.is_complete(k) || !E.cx.is_complete(next)) continue;
    auto nit = E.index.find(next);
    Mat d((Eigen::Index)(nit == E.index.end() ? 0 : E.basis.at(next).size()),
          (Eigen::Index)v.size());
    d.setZero();
    for (size_t col = 0; col < v.size(); ++col) {
      const EndBasisElem& f = v[col];
      int qd = f.q - k.deg;
      Rat sign = (k.deg % 2 == 0) ? -1 : 1;  // -(-1)^{|f|}
      if (qd >= 1) {
        const AlgMat& dm = C.diffs[qd];
        for (size_t i = 0; i < C.terms[qd - 1].size(); ++i) {
          AlgebraElement prod = A.multiply(dm[i][f.a], A.monomial(f.mon));
          for (const auto& [rid, coeff] : prod.c)
            d(nit->second.at({f.q, (int)i, f.b, rid}), (Eigen::Index)col) += coeff;
        }
      }
      if (f.q + 1 <= N) {
        const AlgMat& dm = C.diffs[f.q + 1];
        for (size_t c = 0; c < C.terms[f.q + 1].size(); ++c) {
          AlgebraElement prod = A.multiply(A.monomial(f.mon), dm[f.b][c]);
          for (const auto& [rid, coeff] : prod.c)
            d(nit->second.at({f.q + 1, f.a, (int)c, rid}), (Eigen::Index)col) +=
                sign * coeff;
        }
      }
    }
    E.cx.d[k] = std::move(d);
  }
  return E;
}

Vec EndomorphismDga::mul_basis(BlockKey kf, int fi, BlockKey kg, int gi) const {
  const EndBasisElem& f = basis.at(kf)[fi];
  const EndBasisElem& g = basis.at(kg)[gi];
  BlockKey k{kf.deg + kg.deg, kf.w + kg.w};
  if (!cx.is_complete(k))
    throw window_error("endomorphism product leaves the certified weight window");
  auto it = index.find(k);
  Vec out(cx.dim(k));
  out.setZero();
  if (f.q != g.q - kg.deg || f.b != g.a) return out;
  AlgebraElement prod = C.A->multiply(C.A->monomial(f.mon), C.A->monomial(g.mon));
  if (!prod.is_zero() && it == index.end())
    throw internal_error("nonzero endomorphism product in an unindexed block");
  for (const auto& [rid, coeff] : prod.c)
    out(it->second.at({g.q, f.a, g.b, rid})) += coeff;
  return out;
}

Vec EndomorphismDga::unit() const {
  BlockKey k = unit_key();
  Vec out(cx.dim(k));
  out.setZero();
  auto it = index.find(k);
  for (int q = 0; q < (int)C.terms.size(); ++q)
    for (int a = 0; a < (int)C.terms[q].size(); ++a) {
      const std::vector<int>& blk =
          C.A->block(C.terms[q][a].vertex, C.terms[q][a].vertex, 0);
      out(it->second.at({q, a, a, blk.at(0)})) = 1;
    }
  return out;
}

}  // namespace dca
