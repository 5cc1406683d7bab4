#include "dca/drinfeld.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace dca {

namespace {

std::vector<int> slot_candidates(const TruncatedAlgebra& A, bool need_src_marked,
                                 bool need_tgt_marked) {
  std::vector<int> out;
  for (int id = 0; id < A.total_dim(); ++id) {
    const BasisMon& b = A.basis[id];
    if (need_src_marked && !A.pres.is_marked(b.src)) continue;
    if (need_tgt_marked && !A.pres.is_marked(b.tgt)) continue;
    out.push_back(id);
  }
  return out;
}

}  // namespace

std::string DrinfeldModel::label(const std::vector<int>& t) const {
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += "|";
    s += A->mon_label(t[i]);
  }
  return s;
}

std::map<std::vector<int>, Rat> DrinfeldModel::mul(const std::vector<int>& x,
                                                   const std::vector<int>& y) const {
  int w = 0;
  for (int id : x) w += A->basis[id].weight;
  for (int id : y) w += A->basis[id].weight;
  if (w > w_max) throw window_error("drinfeld product leaves the weight window");
  std::map<std::vector<int>, Rat> out;
  for (const auto& [z, c] : A->mul_mon(x.back(), y.front())) {
    std::vector<int> t(x.begin(), x.end() - 1);
    t.push_back(z);
    t.insert(t.end(), y.begin() + 1, y.end());
    out[t] += c;
  }
  return out;
}

DrinfeldModel drinfeld_model(AlgebraPtr A, int hdeg_max, int w_max) {
  if (A->pres.marked.empty())
    throw input_error("drinfeld model needs a nonempty marked vertex set");
  if (hdeg_max < 1 || w_max < 1) throw input_error("cutoffs must be positive");
  if (w_max > A->w_max)
    throw input_error("drinfeld weight cutoff exceeds the algebra's window");

  DrinfeldModel B;
  B.A = A;
  B.hdeg_max = hdeg_max;
  B.w_max = w_max;

  std::vector<int> ae = slot_candidates(*A, false, true);
  std::vector<int> corner = slot_candidates(*A, true, true);
  std::vector<int> ea = slot_candidates(*A, true, false);

  // degree 0: the algebra itself, one singleton tuple per monomial
  for (int id = 0; id < A->total_dim(); ++id) {
    if (A->basis[id].weight > w_max) continue;
    B.basis[BlockKey{0, A->basis[id].weight}].push_back({id});
  }
  // one level past the certified range so incoming boundaries are known there
  int levels = hdeg_max + 2;
  for (int n = 1; n <= levels; ++n) {
    std::vector<int> cur;
    int wsum = 0;
    std::function<void(int)> grow = [&](int slot) {
      if (slot == n + 1) {
        int w = wsum;
        B.basis[BlockKey{-n, w}].push_back(cur);
        return;
      }
      const std::vector<int>& pool = slot == 0 ? ae : (slot == n ? ea : corner);
      for (int id : pool) {
        int w = A->basis[id].weight;
        if (wsum + w > w_max) continue;
        cur.push_back(id);
        wsum += w;
        grow(slot + 1);
        cur.pop_back();
        wsum -= w;
      }
    };
    grow(0);
  }

  for (auto& [k, tuples] : B.basis) {
    std::sort(tuples.begin(), tuples.end());
    B.cx.dims[k] = (int)tuples.size();
    for (int i = 0; i < (int)tuples.size(); ++i) {
      B.index[k][tuples[i]] = i;
      B.cx.labels[k].push_back(B.label(tuples[i]));
    }
    if (k.deg == -levels) B.cx.incomplete[k] = true;
  }

  for (const auto& [k, tuples] : B.basis) {
    if (k.deg == 0) continue;
    BlockKey nk{k.deg + 1, k.w};
    auto nit = B.index.find(nk);
    Mat m((Eigen::Index)(nit == B.index.end() ? 0 : nit->second.size()),
          (Eigen::Index)tuples.size());
    m.setZero();
    for (size_t c = 0; c < tuples.size(); ++c) {
      const std::vector<int>& t = tuples[c];
      for (size_t i = 0; i + 1 < t.size(); ++i) {
        Rat sgn = (i % 2 == 0) ? 1 : -1;
        for (const auto& [z, coef] : A->mul_mon(t[i], t[i + 1])) {
          std::vector<int> nt(t.begin(), t.begin() + i);
          nt.push_back(z);
          nt.insert(nt.end(), t.begin() + i + 2, t.end());
          m(nit->second.at(nt), (Eigen::Index)c) += sgn * coef;
        }
      }
    }
    B.cx.d[k] = std::move(m);
  }
  // d^2 = 0, column by column: the blocks are large but very sparse
  for (const auto& [k, m1] : B.cx.d) {
    BlockKey nk{k.deg + 1, k.w};
    auto it = B.cx.d.find(nk);
    if (it == B.cx.d.end() || it->second.rows() == 0) continue;
    const Mat& m2 = it->second;
    for (Eigen::Index c = 0; c < m1.cols(); ++c) {
      Vec acc(m2.rows());
      acc.setZero();
      for (Eigen::Index r = 0; r < m1.rows(); ++r)
        if (m1(r, c) != 0) acc += m1(r, c) * m2.col(r);
      if (!acc.isZero())
        throw internal_error("d^2 != 0 in drinfeld model at degree " +
                             std::to_string(k.deg) + ", weight " +
                             std::to_string(k.w));
    }
  }
  return B;
}

CohomologyTable dq_cohomology(const DrinfeldModel& B) { return cohomology(B.cx); }

CohomologyTable dq_cohomology(AlgebraPtr A, int hdeg_max, int w_max) {
  return dq_cohomology(drinfeld_model(A, hdeg_max, w_max));
}

Vec h0_mul(const DrinfeldModel& B, const CohomologyTable& H, int w1, int i, int w2,
           int j) {
  BlockKey k1{0, w1}, k2{0, w2}, k{0, w1 + w2};
  if (w1 + w2 > B.w_max) throw window_error("H^0 product leaves the weight window");
  const Mat& r1 = H.reps.at(k1);
  const Mat& r2 = H.reps.at(k2);
  Vec v(B.cx.dim(k));
  v.setZero();
  const auto& b1 = B.basis.at(k1);
  const auto& b2 = B.basis.at(k2);
  const auto& idx = B.index.at(k);
  for (Eigen::Index a = 0; a < r1.rows(); ++a) {
    if (r1(a, i) == 0) continue;
    for (Eigen::Index b = 0; b < r2.rows(); ++b) {
      if (r2(b, j) == 0) continue;
      for (const auto& [z, c] : B.A->mul_mon(b1[a][0], b2[b][0]))
        v(idx.at({z})) += r1(a, i) * r2(b, j) * c;
    }
  }
  const Mat& reps = H.reps.at(k);
  Mat bd = B.cx.d_from(BlockKey{-1, w1 + w2});
  Mat aug(v.size(), reps.cols() + bd.cols());
  aug << reps, bd;
  std::optional<Vec> x = solve(aug, v);
  if (!x) throw internal_error("H^0 product is not a cocycle");
  return x->head(reps.cols());
}

namespace {

// vertex sitting at split position p of an arrow word (0 = source end)
int vertex_at(const WeightedQuiverPresentation& p, const Word& w, int pos) {
  if (pos == 0) return p.word_src(w);
  return p.arrows[w[pos - 1]].tgt;
}

// Canonical marking of one monomial: the leftmost interior split at a marked
// vertex when one exists, else a marked endpoint.  In a relation that
// identifies a single arrow with composites the composites are split at their
// leftmost interior position instead, mirroring the arrow's own marking; such
// a split may sit at an unmarked vertex and is then kept as a formal pair.
// Returns -1 when no position of the monomial is marked.
int canonical_split(const WeightedQuiverPresentation& p, const Word& w,
                    bool prefer_interior) {
  int l = (int)w.size();
  bool any = false;
  for (int pos = 0; pos <= l; ++pos)
    if (p.is_marked(vertex_at(p, w, pos))) any = true;
  if (!any) return -1;
  for (int pos = 1; pos < l; ++pos)
    if (p.is_marked(vertex_at(p, w, pos))) return pos;
  if (prefer_interior && l >= 2) return 1;
  if (p.is_marked(vertex_at(p, w, 0))) return 0;
  return l;
}

AlgebraElement piece(const TruncatedAlgebra& A, const Word& w, int from, int to,
                     int vertex) {
  if (from == to) return A.idempotent(vertex);
  return A.path_element(Word(w.begin() + from, w.begin() + to));
}

std::string coeff_prefix(const Rat& c, bool first) {
  std::string s;
  if (c < 0) s = first ? "-" : " - ";
  else if (!first) s = " + ";
  Rat a = c < 0 ? -c : c;
  if (a != 1) s += rat_str(a) + " ";
  return s;
}

}  // namespace

MarkedRelationsResult marked_relations(AlgebraPtr A, int w_cap) {
  const WeightedQuiverPresentation& p = A->pres;
  int w_lim = (w_cap > 0 && w_cap < A->w_max) ? w_cap : A->w_max;
  MarkedRelationsResult res;

  AlgebraPtr Q = A->quotient_by_idempotent_ideal();
  int qdim = Q->total_dim();
  for (const Relation& r : p.relations) {
    int prod = 1;
    for (const PathTerm& t : r.terms) prod *= std::max(1, (int)t.word.size() - 1);
    res.ell_bound += prod;
  }
  res.dim_bound = qdim * qdim * res.ell_bound;

  // monomials avoiding the marked set entirely: these span A/AeA
  std::vector<int> lifts;
  for (int id = 0; id < A->total_dim(); ++id) {
    const BasisMon& b = A->basis[id];
    if (b.word.empty()) continue;  // idempotent action is the identity
    bool clean = !p.is_marked(b.src);
    for (size_t i = 0; clean && i < b.word.size(); ++i)
      if (p.is_marked(p.arrows[b.word[i]].tgt)) clean = false;
    if (clean) lifts.push_back(id);
  }

  for (size_t ri = 0; ri < p.relations.size(); ++ri) {
    const Relation& r = p.relations[ri];
    if (r.weight > w_lim) continue;
    bool prefer_interior = false;
    for (const PathTerm& t : r.terms)
      if (t.word.size() == 1) prefer_interior = true;
    std::vector<int> pos;
    bool markable = true;
    for (const PathTerm& t : r.terms) {
      int s = canonical_split(p, t.word, prefer_interior);
      if (s < 0) markable = false;
      pos.push_back(s);
    }
    if (!markable) continue;

    MarkedRelation m;
    m.relation = (int)ri;
    m.positions = pos;
    m.src = r.src;
    m.tgt = r.tgt;
    m.weight = r.weight;
    for (size_t ti = 0; ti < r.terms.size(); ++ti) {
      const PathTerm& t = r.terms[ti];
      int s = pos[ti];
      int v = vertex_at(p, t.word, s);
      AlgebraElement left = piece(*A, t.word, 0, s, v);
      AlgebraElement right = piece(*A, t.word, s, (int)t.word.size(), v);
      for (const auto& [lid, lc] : left.c)
        for (const auto& [rid, rc] : right.c)
          m.pairs[{lid, rid}] += t.coeff * lc * rc;
      m.text += coeff_prefix(t.coeff, ti == 0);
      m.text += p.word_str(Word(t.word.begin(), t.word.begin() + s));
      m.text += "|";
      m.text += p.word_str(Word(t.word.begin() + s, t.word.end()));
    }
    int base = (int)res.classes.size();
    res.classes.push_back(m);

    // quotient multiples a.m.b while they fit in the window (-1 = no factor)
    const MarkedRelation mm = res.classes[base];
    for (int ai = -1; ai < (int)lifts.size(); ++ai) {
      int a = ai < 0 ? -1 : lifts[ai];
      if (a >= 0 && A->basis[a].tgt != r.src) continue;
      for (int bi = -1; bi < (int)lifts.size(); ++bi) {
        if (ai < 0 && bi < 0) continue;  // mm itself, already present
        int b = bi < 0 ? -1 : lifts[bi];
        if (b >= 0 && A->basis[b].src != r.tgt) continue;
        int w = mm.weight + (a >= 0 ? A->basis[a].weight : 0) +
                (b >= 0 ? A->basis[b].weight : 0);
        if (w > w_lim) continue;
        MarkedRelation mult = mm;
        mult.weight = w;
        mult.pairs.clear();
        for (const auto& [uv, c] : mm.pairs) {
          SparseVec lv = a >= 0 ? A->mul_mon(a, uv.first) : SparseVec{{uv.first, 1}};
          SparseVec rv = b >= 0 ? A->mul_mon(uv.second, b) : SparseVec{{uv.second, 1}};
          for (const auto& [lid, lc] : lv)
            for (const auto& [rid, rc] : rv) mult.pairs[{lid, rid}] += c * lc * rc;
        }
        for (auto it = mult.pairs.begin(); it != mult.pairs.end();)
          it = it->second == 0 ? mult.pairs.erase(it) : std::next(it);
        if (mult.pairs.empty()) continue;
        mult.src = a >= 0 ? A->basis[a].src : r.src;
        mult.tgt = b >= 0 ? A->basis[b].tgt : r.tgt;
        mult.text = (a >= 0 ? A->mon_label(a) + " . " : "") + "(" + mm.text + ")" +
                    (b >= 0 ? " . " + A->mon_label(b) : "");
        res.classes.push_back(mult);
      }
    }
  }

  // rank per weight in the span of monomial pairs, modulo the boundaries of
  // honest degree -2 tuples (left factor ending marked, corner middle, right
  // factor starting marked)
  std::set<int> weights;
  for (const MarkedRelation& m : res.classes) weights.insert(m.weight);
  for (int w : weights) {
    std::map<std::pair<int, int>, Eigen::Index> coord;
    auto coord_of = [&](std::pair<int, int> uv) {
      auto it = coord.find(uv);
      if (it == coord.end()) it = coord.emplace(uv, (Eigen::Index)coord.size()).first;
      return it->second;
    };
    std::vector<std::map<Eigen::Index, Rat>> bcols, mcols;
    std::vector<int> mwho;
    for (int u = 0; u < A->total_dim(); ++u) {
      const BasisMon& bu = A->basis[u];
      if (!p.is_marked(bu.tgt) || bu.weight > w) continue;
      for (int rmid = 0; rmid < A->total_dim(); ++rmid) {
        const BasisMon& br = A->basis[rmid];
        if (!p.is_marked(br.src) || !p.is_marked(br.tgt)) continue;
        if (bu.weight + br.weight > w) continue;
        for (int v = 0; v < A->total_dim(); ++v) {
          const BasisMon& bv = A->basis[v];
          if (!p.is_marked(bv.src) || bu.weight + br.weight + bv.weight != w) continue;
          std::map<Eigen::Index, Rat> col;
          for (const auto& [z, c] : A->mul_mon(u, rmid)) col[coord_of({z, v})] += c;
          for (const auto& [z, c] : A->mul_mon(rmid, v)) col[coord_of({u, z})] -= c;
          for (auto it = col.begin(); it != col.end();)
            it = it->second == 0 ? col.erase(it) : std::next(it);
          if (!col.empty()) bcols.push_back(std::move(col));
        }
      }
    }
    for (size_t i = 0; i < res.classes.size(); ++i) {
      const MarkedRelation& m = res.classes[i];
      if (m.weight != w) continue;
      SparseVec total;
      std::map<Eigen::Index, Rat> col;
      for (const auto& [uv, c] : m.pairs) {
        col[coord_of(uv)] += c;
        for (const auto& [z, cc] : A->mul_mon(uv.first, uv.second)) total[z] += c * cc;
      }
      for (const auto& [z, c] : total)
        if (c != 0) throw internal_error("marked relation is not a cocycle");
      mcols.push_back(std::move(col));
      mwho.push_back((int)i);
    }
    Mat full((Eigen::Index)coord.size(), (Eigen::Index)(bcols.size() + mcols.size()));
    full.setZero();
    for (size_t c = 0; c < bcols.size(); ++c)
      for (const auto& [row, val] : bcols[c]) full(row, (Eigen::Index)c) = val;
    Eigen::Index base_rank = rank_of(full.leftCols((Eigen::Index)bcols.size()));
    Eigen::Index have = base_rank;
    for (size_t c = 0; c < mcols.size(); ++c) {
      Eigen::Index col = (Eigen::Index)(bcols.size() + c);
      for (const auto& [row, val] : mcols[c]) full(row, col) = val;
      Eigen::Index nr = rank_of(full.leftCols(col + 1));
      if (nr > have) {
        have = nr;
        res.basis.push_back(mwho[c]);
      } else {
        full.col(col).setZero();
      }
    }
    res.rank += (int)(have - base_rank);
  }
  std::sort(res.basis.begin(), res.basis.end());
  return res;
}

bool eta_periodicity_check(const CohomologyTable& T, int deg_lo) {
  for (const auto& [k, n] : T.dims) {
    if (k.deg > 0 || k.deg < deg_lo) continue;
    if (!T.is_certified(k))
      throw window_error("eta periodicity window exceeds certification");
  }
  for (int j = deg_lo + 2; j <= 0; ++j)
    if (T.dim_degree(j) != T.dim_degree(j - 2)) return false;
  return true;
}

}  // namespace dca
