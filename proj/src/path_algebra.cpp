#include "dca/path_algebra.hpp"

#include <algorithm>

#include "dca/linalg.hpp"

namespace dca {

namespace {

// Degree-lexicographic: by length, then by arrow indices in declared order.
bool deglex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Word append(const Word& w, int arrow) {
  Word out = w;
  out.push_back(arrow);
  return out;
}

void axpy(SparseVec& acc, const Rat& c, const SparseVec& v) {
  for (const auto& [id, x] : v) {
    Rat& slot = acc[id];
    slot += c * x;
    if (slot == 0) acc.erase(id);
  }
}

}  // namespace

const std::vector<int>& TruncatedAlgebra::block(int s, int t, int w) const {
  static const std::vector<int> empty;
  if (s < 0 || t < 0 || s >= n_vertices() || t >= n_vertices() || w < 0 || w > w_max)
    return empty;
  return blocks_[s][t][w];
}

int TruncatedAlgebra::dim_weight(int w) const {
  int d = 0;
  for (const BasisMon& b : basis)
    if (b.weight == w) ++d;
  return d;
}

std::string TruncatedAlgebra::mon_label(int id) const {
  const BasisMon& b = basis[id];
  if (b.word.empty()) return "e_" + pres.vertices[b.src];
  return pres.word_str(b.word);
}

SparseVec TruncatedAlgebra::extend(const SparseVec& v, int arrow) const {
  const Arrow& a = pres.arrows[arrow];
  SparseVec out;
  for (const auto& [id, c] : v) {
    const BasisMon& b = basis[id];
    if (b.tgt != a.src) continue;
    if (b.weight + a.weight > w_max)
      throw window_error("product of weight " + std::to_string(b.weight + a.weight) +
                         " exceeds the computed window w_max=" + std::to_string(w_max));
    auto it = red_.find(append(b.word, arrow));
    if (it == red_.end())
      throw internal_error("missing reduction for a candidate word");
    axpy(out, c, it->second);
  }
  return out;
}

AlgebraPtr TruncatedAlgebra::build(const WeightedQuiverPresentation& p0, int w_max) {
  if (w_max < 0) throw input_error("w_max must be nonnegative");
  auto alg = std::make_shared<TruncatedAlgebra>();
  TruncatedAlgebra& A = *alg;
  A.pres = p0;
  A.pres.validate();
  A.w_max = w_max;
  int nv = A.n_vertices();
  A.blocks_.assign(nv, std::vector<std::vector<std::vector<int>>>(
                           nv, std::vector<std::vector<int>>(w_max + 1)));

  for (int v = 0; v < nv; ++v) {
    A.blocks_[v][v][0].push_back((int)A.basis.size());
    A.basis.push_back(BasisMon{{}, v, v, 0});
  }

  for (int w = 1; w <= w_max; ++w) {
    for (int s = 0; s < nv; ++s) {
      for (int t = 0; t < nv; ++t) {
        // Candidate monomials: (normal-form prefix) * arrow, sorted deg-lex.
        std::vector<std::pair<Word, int>> cands;  // word, prefix id
        for (size_t ai = 0; ai < A.pres.arrows.size(); ++ai) {
          const Arrow& a = A.pres.arrows[ai];
          if (a.tgt != t || a.weight > w) continue;
          for (int b : A.block(s, a.src, w - a.weight))
            cands.push_back({append(A.basis[b].word, (int)ai), b});
        }
        std::sort(cands.begin(), cands.end(),
                  [](const auto& x, const auto& y) { return deglex_less(x.first, y.first); });
        std::map<Word, int> cand_index;
        for (size_t i = 0; i < cands.size(); ++i) cand_index[cands[i].first] = (int)i;

        // Relation shifts b * r spanning the ideal's weight-w piece here.
        std::vector<Vec> rows;
        for (const Relation& r : A.pres.relations) {
          if (r.tgt != t || r.weight > w) continue;
          for (int b : A.block(s, r.src, w - r.weight)) {
            Vec row(cands.size());
            row.setZero();
            for (const PathTerm& term : r.terms) {
              SparseVec prefix{{b, Rat(1)}};
              for (size_t k = 0; k + 1 < term.word.size(); ++k)
                prefix = A.extend(prefix, term.word[k]);
              int last = term.word.back();
              for (const auto& [id, cc] : prefix) {
                auto it = cand_index.find(append(A.basis[id].word, last));
                if (it == cand_index.end())
                  throw internal_error("relation term left the candidate set");
                row(it->second) += term.coeff * cc;
              }
            }
            if (!row.isZero()) rows.push_back(row);
          }
        }

        Mat m((Eigen::Index)rows.size(), (Eigen::Index)cands.size());
        for (size_t i = 0; i < rows.size(); ++i) m.row((Eigen::Index)i) = rows[i].transpose();
        std::vector<Eigen::Index> pivots;
        Eigen::Index rank = rref_in_place(m, &pivots);
        std::vector<char> is_pivot(cands.size(), 0);
        for (Eigen::Index c : pivots) is_pivot[c] = 1;

        // Free candidates are the new basis monomials.
        std::vector<int> cand_gid(cands.size(), -1);
        for (size_t i = 0; i < cands.size(); ++i) {
          if (is_pivot[i]) continue;
          int gid = (int)A.basis.size();
          cand_gid[i] = gid;
          A.blocks_[s][t][w].push_back(gid);
          A.basis.push_back(BasisMon{cands[i].first, s, t, w});
          A.red_[cands[i].first] = SparseVec{{gid, Rat(1)}};
        }
        for (Eigen::Index i = 0; i < rank; ++i) {
          SparseVec nf;
          for (size_t c = 0; c < cands.size(); ++c)
            if (!is_pivot[c] && m(i, (Eigen::Index)c) != 0)
              nf[cand_gid[c]] = -m(i, (Eigen::Index)c);
          A.red_[cands[pivots[i]].first] = nf;
        }
      }
    }
  }
  return alg;
}

AlgebraPtr TruncatedAlgebra::corner_algebra() const {
  if (kind_ != Kind::path)
    throw input_error("cornering is only supported on the full path algebra");
  if (pres.marked.empty()) throw input_error("no marked vertices");
  auto sub = std::make_shared<TruncatedAlgebra>();
  TruncatedAlgebra& C = *sub;
  C.kind_ = Kind::corner;
  C.parent_ = shared_from_this();
  C.pres = pres;
  C.w_max = w_max;
  int nv = n_vertices();
  C.blocks_.assign(nv, std::vector<std::vector<std::vector<int>>>(
                           nv, std::vector<std::vector<int>>(w_max + 1)));
  for (int id = 0; id < (int)basis.size(); ++id) {
    const BasisMon& b = basis[id];
    if (!pres.is_marked(b.src) || !pres.is_marked(b.tgt)) continue;
    int own = (int)C.basis.size();
    C.parent_id_.push_back(id);
    C.own_id_[id] = own;
    C.basis.push_back(b);
    C.blocks_[b.src][b.tgt][b.weight].push_back(own);
  }
  return sub;
}

AlgebraPtr TruncatedAlgebra::quotient_by_idempotent_ideal() const {
  if (kind_ != Kind::path)
    throw input_error("quotients are only supported on the full path algebra");
  if (pres.marked.empty()) throw input_error("no marked vertices");
  auto sub = std::make_shared<TruncatedAlgebra>();
  TruncatedAlgebra& Q = *sub;
  Q.kind_ = Kind::quotient;
  Q.parent_ = shared_from_this();
  Q.pres = pres;
  Q.w_max = w_max;
  int nv = n_vertices();
  Q.blocks_.assign(nv, std::vector<std::vector<std::vector<int>>>(
                           nv, std::vector<std::vector<int>>(w_max + 1)));
  for (int w = 0; w <= w_max; ++w) {
    for (int s = 0; s < nv; ++s) {
      if (pres.is_marked(s)) continue;
      for (int t = 0; t < nv; ++t) {
        if (pres.is_marked(t)) continue;
        const std::vector<int>& blk = block(s, t, w);
        if (blk.empty()) continue;
        std::map<int, int> local;  // parent id -> column
        for (size_t i = 0; i < blk.size(); ++i) local[blk[i]] = (int)i;
        std::vector<Vec> rows;
        for (int mvert : pres.marked) {
          for (int w1 = 0; w1 <= w; ++w1) {
            for (int b1 : block(s, mvert, w1)) {
              for (int b2 : block(mvert, t, w - w1)) {
                const SparseVec& prod = mul_mon(b1, b2);
                if (prod.empty()) continue;
                Vec row(blk.size());
                row.setZero();
                for (const auto& [id, c] : prod) row(local.at(id)) = c;
                rows.push_back(row);
              }
            }
          }
        }
        Mat m((Eigen::Index)rows.size(), (Eigen::Index)blk.size());
        for (size_t i = 0; i < rows.size(); ++i) m.row((Eigen::Index)i) = rows[i].transpose();
        std::vector<Eigen::Index> pivots;
        Eigen::Index rank = rref_in_place(m, &pivots);
        std::vector<char> is_pivot(blk.size(), 0);
        for (Eigen::Index c : pivots) is_pivot[c] = 1;
        std::vector<int> col_own(blk.size(), -1);
        for (size_t i = 0; i < blk.size(); ++i) {
          if (is_pivot[i]) continue;
          int own = (int)Q.basis.size();
          col_own[i] = own;
          Q.parent_id_.push_back(blk[i]);
          Q.basis.push_back(basis[blk[i]]);
          Q.blocks_[s][t][w].push_back(own);
          Q.proj_[blk[i]] = SparseVec{{own, Rat(1)}};
        }
        for (Eigen::Index i = 0; i < rank; ++i) {
          SparseVec img;
          for (size_t c = 0; c < blk.size(); ++c)
            if (!is_pivot[c] && m(i, (Eigen::Index)c) != 0)
              img[col_own[c]] = -m(i, (Eigen::Index)c);
          Q.proj_[blk[pivots[i]]] = img;
        }
      }
    }
  }
  return sub;
}

SparseVec TruncatedAlgebra::project_parent(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [pid, c] : v) {
    if (kind_ == Kind::corner) {
      auto it = own_id_.find(pid);
      if (it == own_id_.end())
        throw internal_error("corner product left the corner blocks");
      out[it->second] += c;
      if (out[it->second] == 0) out.erase(it->second);
    } else {
      auto it = proj_.find(pid);
      if (it == proj_.end()) continue;  // endpoint marked: dies in the quotient
      axpy(out, c, it->second);
    }
  }
  return out;
}

const SparseVec& TruncatedAlgebra::mul_mon(int i, int j) const {
  auto key = std::make_pair(i, j);
  auto it = mul_cache_.find(key);
  if (it != mul_cache_.end()) return it->second;
  SparseVec result;
  if (kind_ == Kind::path) {
    if (basis[i].tgt == basis[j].src) {
      SparseVec acc{{i, Rat(1)}};
      for (int a : basis[j].word) acc = extend(acc, a);
      result = std::move(acc);
    }
  } else {
    const SparseVec& up = parent_->mul_mon(parent_id_[i], parent_id_[j]);
    result = project_parent(up);
  }
  return mul_cache_.emplace(key, std::move(result)).first->second;
}

AlgebraElement TruncatedAlgebra::monomial(int id, const Rat& coeff) const {
  AlgebraElement e{this, {}};
  if (coeff != 0) e.c[id] = coeff;
  return e;
}

AlgebraElement TruncatedAlgebra::idempotent(int v) const {
  if (v < 0 || v >= n_vertices()) throw input_error("bad vertex index");
  const std::vector<int>& blk = block(v, v, 0);
  if (blk.empty()) return zero();  // dies in a quotient / outside a corner
  for (int id : blk)
    if (basis[id].word.empty()) return monomial(id);
  return zero();
}

AlgebraElement TruncatedAlgebra::path_element(const Word& w) const {
  if (w.empty()) throw input_error("empty path");
  if (!pres.word_composable(w)) return zero();
  if (kind_ != Kind::path) {
    AlgebraElement up = parent_->path_element(w);
    return {this, project_parent(up.c)};
  }
  SparseVec acc;
  const std::vector<int>& blk = block(pres.word_src(w), pres.word_src(w), 0);
  acc[blk.at(0)] = 1;
  for (int a : w) acc = extend(acc, a);
  return {this, acc};
}

AlgebraElement TruncatedAlgebra::from_poly(const PathPoly& poly) const {
  AlgebraElement acc = zero();
  for (const PathTerm& t : poly) {
    AlgebraElement p = path_element(t.word);
    acc = add(acc, scale(t.coeff, p));
  }
  return acc;
}

AlgebraElement TruncatedAlgebra::add(const AlgebraElement& x, const AlgebraElement& y) const {
  AlgebraElement out{this, x.c};
  axpy(out.c, 1, y.c);
  return out;
}

AlgebraElement TruncatedAlgebra::scale(const Rat& c, const AlgebraElement& x) const {
  AlgebraElement out{this, {}};
  if (c == 0) return out;
  for (const auto& [id, v] : x.c) out.c[id] = c * v;
  return out;
}

AlgebraElement TruncatedAlgebra::multiply(const AlgebraElement& x,
                                          const AlgebraElement& y) const {
  AlgebraElement out{this, {}};
  for (const auto& [i, cx] : x.c)
    for (const auto& [j, cy] : y.c) axpy(out.c, cx * cy, mul_mon(i, j));
  return out;
}

bool TruncatedAlgebra::certify_finite() const {
  int maxw = 0;
  for (const Arrow& a : pres.arrows) maxw = std::max(maxw, a.weight);
  if (maxw == 0) return true;
  for (int w = std::max(0, w_max - maxw + 1); w <= w_max; ++w)
    if (dim_weight(w) > 0) return false;
  return true;
}

}  // namespace dca
