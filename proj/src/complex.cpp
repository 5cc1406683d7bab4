#include "dca/complex.hpp"

#include <algorithm>

namespace dca {

Mat BlockComplex::d_from(BlockKey k) const {
  BlockKey next{k.deg + 1, k.w};
  auto it = d.find(k);
  if (it != d.end()) return it->second;
  Mat m(dim(next), dim(k));
  m.setZero();
  return m;
}

void BlockComplex::check_d_squared(const std::string& what) const {
  for (const auto& [k, n] : dims) {
    if (n == 0) continue;
    BlockKey next{k.deg + 1, k.w};
    if (dim(next) == 0) continue;
    Mat dd = d_from(next) * d_from(k);
    if (!dd.isZero())
      throw internal_error("d^2 != 0 in " + what + " at degree " +
                           std::to_string(k.deg) + ", weight " + std::to_string(k.w));
  }
}

CohomologyTable cohomology(const BlockComplex& X) {
  CohomologyTable t;
  for (const auto& [k, n] : X.dims) {
    if (n == 0) continue;
    BlockKey prev{k.deg - 1, k.w};
    Mat z = kernel_basis(X.d_from(k));
    Mat b(n, X.dim(prev));
    if (X.dim(prev) > 0) b = X.d_from(prev);
    else b.setZero();
    Eigen::Index rank_b = rank_of(b);
    Eigen::Index h = z.cols() - rank_b;
    t.dims[k] = (int)h;
    // Representatives: kernel columns extending a basis of the image.
    Mat both(n, b.cols() + z.cols());
    both << b, z;
    std::vector<Eigen::Index> indep = independent_columns(both);
    Mat reps(n, h);
    Eigen::Index out = 0;
    for (Eigen::Index c : indep)
      if (c >= b.cols()) reps.col(out++) = z.col(c - b.cols());
    t.reps[k] = reps;
    t.certified[k] = X.is_complete(k) && X.is_complete(prev) &&
                     X.is_complete(BlockKey{k.deg + 1, k.w});
  }
  return t;
}

int CohomologyTable::dim_degree(int deg) const {
  int total = 0;
  for (const auto& [k, n] : dims)
    if (k.deg == deg && is_certified(k)) total += n;
  return total;
}

std::vector<std::pair<int, int>> term_coords(const ProjectiveComplex& C, int n, int t,
                                             int w) {
  std::vector<std::pair<int, int>> out;
  if (n < 0 || n >= (int)C.terms.size()) return out;
  const auto& term = C.terms[n];
  for (size_t j = 0; j < term.size(); ++j) {
    int bw = w - term[j].shift;
    if (bw < 0) continue;
    for (int id : C.A->block(term[j].vertex, t, bw)) out.push_back({(int)j, id});
  }
  return out;
}

Mat diff_matrix(const ProjectiveComplex& C, int n, int t, int w) {
  auto rows = term_coords(C, n - 1, t, w);
  auto cols = term_coords(C, n, t, w);
  std::map<std::pair<int, int>, Eigen::Index> row_index;
  for (size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = (Eigen::Index)i;
  Mat m((Eigen::Index)rows.size(), (Eigen::Index)cols.size());
  m.setZero();
  const AlgMat& d = C.diffs[n];
  for (size_t c = 0; c < cols.size(); ++c) {
    auto [j, id] = cols[c];
    for (size_t i = 0; i < d.size(); ++i) {
      const AlgebraElement& entry = d[i][j];
      if (entry.is_zero()) continue;
      for (const auto& [rid, coeff] : C.A->multiply(entry, C.A->monomial(id)).c)
        m(row_index.at({(int)i, rid}), (Eigen::Index)c) += coeff;
    }
  }
  return m;
}

bool verify_complex(const ProjectiveComplex& C) {
  for (size_t n = 2; n < C.terms.size(); ++n) {
    const AlgMat& d1 = C.diffs[n - 1];  // terms[n-1] -> terms[n-2]
    const AlgMat& d2 = C.diffs[n];      // terms[n]   -> terms[n-1]
    for (size_t i = 0; i < C.terms[n - 2].size(); ++i) {
      for (size_t j = 0; j < C.terms[n].size(); ++j) {
        AlgebraElement acc = C.A->zero();
        for (size_t k = 0; k < C.terms[n - 1].size(); ++k)
          acc = C.A->add(acc, C.A->multiply(d1[i][k], d2[k][j]));
        if (!acc.is_zero()) return false;
      }
    }
  }
  return true;
}

ProjectiveComplex resolve_simple(AlgebraPtr A, int v, int hdeg_max, int w_max) {
  if (v < 0 || v >= A->n_vertices()) throw input_error("bad vertex for resolve_simple");
  if (hdeg_max < 1 || w_max < 1) throw input_error("cutoffs must be positive");
  if (w_max > A->w_max)
    throw input_error("resolution weight cutoff exceeds the algebra's window");
  ProjectiveComplex C;
  C.A = A;
  C.simple_vertex = v;
  C.cert_weight = w_max;
  C.terms.push_back({Summand{v, 0}});
  C.diffs.push_back({});

  int nv = A->n_vertices();
  for (int n = 0; n < hdeg_max; ++n) {
    // Generators of ker(d_n) (n = 0: of the radical of P_v), by weight.
    struct Gen {
      int tgt = 0, weight = 0;
      Vec coords;                            // over term_coords(C, n, tgt, weight)
      std::vector<AlgebraElement> entries;   // per summand of terms[n]
    };
    std::vector<Gen> gens;
    for (int w = 1; w <= w_max; ++w) {
      for (int t = 0; t < nv; ++t) {
        auto coords = term_coords(C, n, t, w);
        if (coords.empty()) continue;
        Mat k;
        if (n == 0) {
          // Augmentation kernel: everything of positive weight.
          k = Mat::Identity((Eigen::Index)coords.size(), (Eigen::Index)coords.size());
        } else {
          k = kernel_basis(diff_matrix(C, n, t, w));
        }
        if (k.cols() == 0) continue;
        // Span of earlier generators times the algebra at this (t, w).
        std::vector<Vec> span_cols;
        std::map<std::pair<int, int>, Eigen::Index> index;
        for (size_t i = 0; i < coords.size(); ++i) index[coords[i]] = (Eigen::Index)i;
        for (const Gen& g : gens) {
          for (int b : A->block(g.tgt, t, w - g.weight)) {
            Vec col((Eigen::Index)coords.size());
            col.setZero();
            auto gcoords = term_coords(C, n, g.tgt, g.weight);
            for (Eigen::Index gi = 0; gi < (Eigen::Index)gcoords.size(); ++gi) {
              if (g.coords(gi) == 0) continue;
              auto [summand, id] = gcoords[gi];
              for (const auto& [rid, coeff] : A->mul_mon(id, b))
                col(index.at({summand, rid})) += g.coords(gi) * coeff;
            }
            span_cols.push_back(col);
          }
        }
        Mat all((Eigen::Index)coords.size(),
                (Eigen::Index)span_cols.size() + k.cols());
        for (size_t i = 0; i < span_cols.size(); ++i) all.col((Eigen::Index)i) = span_cols[i];
        all.rightCols(k.cols()) = k;
        for (Eigen::Index c : independent_columns(all)) {
          if (c < (Eigen::Index)span_cols.size()) continue;
          Gen g;
          g.tgt = t;
          g.weight = w;
          g.coords = k.col(c - (Eigen::Index)span_cols.size());
          for (size_t summand = 0; summand < C.terms[n].size(); ++summand)
            g.entries.push_back(A->zero());
          for (size_t i = 0; i < coords.size(); ++i) {
            if (g.coords((Eigen::Index)i) == 0) continue;
            auto [summand, id] = coords[i];
            g.entries[summand].alg = A.get();
            g.entries[summand].c[id] += g.coords((Eigen::Index)i);
          }
          gens.push_back(std::move(g));
        }
      }
    }
    if (gens.empty()) {
      C.finished = true;
      break;
    }
    std::vector<Summand> next;
    AlgMat d(C.terms[n].size(), std::vector<AlgebraElement>(gens.size(), A->zero()));
    for (size_t col = 0; col < gens.size(); ++col) {
      next.push_back(Summand{gens[col].tgt, gens[col].weight});
      for (size_t row = 0; row < C.terms[n].size(); ++row)
        d[row][col] = gens[col].entries[row];
    }
    C.terms.push_back(std::move(next));
    C.diffs.push_back(std::move(d));
  }
  return C;
}

}  // namespace dca
