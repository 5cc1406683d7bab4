#include "dca/ainfty.hpp"

#include <algorithm>
#include <optional>

namespace dca {

namespace {

// Bilinear extension of the basis product.  Throws window_error if the target
// block is not trusted, even when the result would be zero.
Vec mul_full(const DgaView& E, BlockKey ka, const Vec& va, BlockKey kb, const Vec& vb) {
  BlockKey k{ka.deg + kb.deg, ka.w + kb.w};
  if (!E.is_trusted(k)) throw window_error("product leaves the certified window");
  Vec out(E.cx->dim(k));
  out.setZero();
  for (Eigen::Index i = 0; i < va.size(); ++i) {
    if (va(i) == 0) continue;
    for (Eigen::Index j = 0; j < vb.size(); ++j) {
      if (vb(j) == 0) continue;
      out += va(i) * vb(j) * E.mul(ka, (int)i, kb, (int)j);
    }
  }
  return out;
}

}  // namespace

DgaView view_of(const EndomorphismDga& E) {
  DgaView v;
  v.cx = &E.cx;
  v.mul = [&E](BlockKey ka, int i, BlockKey kb, int j) {
    return E.mul_basis(ka, i, kb, j);
  };
  v.unit_key = E.unit_key();
  v.unit = E.unit();
  v.trusted = [&E](BlockKey k) {
    return E.cx.is_complete(k) && k.w >= E.w_trust_min && k.deg <= E.deg_trust &&
           k.deg >= -E.deg_trust;
  };
  return v;
}

void AInfinityStructure::index_basis() {
  elem_block.clear();
  elem_idx.clear();
  gids.clear();
  for (const auto& [k, n] : cx.dims) {
    if (n == 0) continue;
    std::vector<int>& g = gids[k];
    for (int i = 0; i < n; ++i) {
      g.push_back((int)elem_block.size());
      elem_block.push_back(k);
      elem_idx.push_back(i);
    }
  }
}

int AInfinityStructure::tuple_weight(const std::vector<int>& t) const {
  int w = 0;
  for (int g : t) w += wt(g);
  return w;
}

std::string AInfinityStructure::label(int gid) const {
  BlockKey k = elem_block[gid];
  auto it = cx.labels.find(k);
  if (it != cx.labels.end() && elem_idx[gid] < (int)it->second.size())
    return it->second[elem_idx[gid]];
  return "deg" + std::to_string(k.deg) + "w" + std::to_string(k.w) + "#" +
         std::to_string(elem_idx[gid]);
}

SparseVec AInfinityStructure::m(const std::vector<int>& tuple) const {
  size_t n = tuple.size();
  if (n == 0) throw input_error("empty operation tuple");
  if (unit_gid >= 0 && n >= 2) {
    // Strict unitality: m_2(1, x) = m_2(x, 1) = x, all other unit ops vanish.
    for (size_t i = 0; i < n; ++i) {
      if (tuple[i] != unit_gid) continue;
      if (n != 2) return {};
      int other = tuple[1 - i];
      return SparseVec{{other, Rat(1)}};
    }
  }
  if (n == 1) {
    int g = tuple[0];
    BlockKey k = elem_block[g];
    BlockKey nk{k.deg + 1, k.w};
    if (!cx.is_complete(k) || !cx.is_complete(nk))
      throw window_error("differential leaves the certified window");
    if (cx.dim(nk) == 0) return {};
    auto git = gids.find(nk);
    if (git == gids.end())
      throw window_error("differential lands in an unindexed block");
    Vec col = cx.d_from(k).col(elem_idx[g]);
    SparseVec out;
    for (Eigen::Index i = 0; i < col.size(); ++i)
      if (col(i) != 0) out[git->second[(size_t)i]] = col(i);
    return out;
  }
  if ((int)n > arity_max) throw window_error("operation arity exceeds the computed bound");
  int w = tuple_weight(tuple);
  if (w < w_lo || w > w_hi)
    throw window_error("operation weight leaves the certified window");
  if (uncertified.count(tuple))
    throw window_error("operation not certified at the current cutoffs");
  auto it = ops.find(tuple);
  return it == ops.end() ? SparseVec{} : it->second;
}

namespace {

// Per-block splitting E = im(d) + chosen representatives + complement of the
// kernel, with the projections needed by the transfer.
struct Hodge {
  Mat sigma;  // n x hdim, chosen cocycle representatives
  Mat pi;     // hdim x n, projection onto class coordinates
  Mat pb;     // rb x n, coordinates along the chosen image basis
  Mat bmat;   // n x rb, chosen basis of im(d) into this block
  bool unit_first = false;
};

struct EVal {
  BlockKey k{0, 0};
  Vec v;
  bool zero() const { return v.size() == 0 || v.isZero(); }
};

struct TransferCtx {
  const DgaView* E = nullptr;
  std::map<BlockKey, Hodge> hodge_cache;
  std::map<BlockKey, Mat> wcomp_cache;  // complement of the kernel, per block
  std::map<BlockKey, Mat> h_cache;      // homotopy: block -> previous block
  std::map<std::vector<int>, EVal> lam_memo;
  std::set<std::vector<int>> failed;
  const AInfinityStructure* M = nullptr;

  void require(BlockKey k) const {
    if (!E->is_trusted(k)) throw window_error("block outside the trusted window");
  }

  const Mat& wcomp(BlockKey k) {
    auto it = wcomp_cache.find(k);
    if (it != wcomp_cache.end()) return it->second;
    require(k);
    require(BlockKey{k.deg + 1, k.w});
    Mat z = kernel_basis(E->cx->d_from(k));
    Eigen::Index n = E->cx->dim(k);
    Mat cand(n, z.cols() + n);
    cand.leftCols(z.cols()) = z;
    cand.rightCols(n) = Mat::Identity(n, n);
    Mat w(n, n - z.cols());
    Eigen::Index out = 0;
    for (Eigen::Index c : independent_columns(cand))
      if (c >= z.cols()) w.col(out++).setZero(), w(c - z.cols(), out - 1) = 1;
    if (out != w.cols()) throw internal_error("kernel complement has wrong rank");
    return wcomp_cache.emplace(k, std::move(w)).first->second;
  }

  const Hodge& hodge(BlockKey k) {
    auto it = hodge_cache.find(k);
    if (it != hodge_cache.end()) return it->second;
    require(k);
    BlockKey prev{k.deg - 1, k.w}, next{k.deg + 1, k.w};
    require(prev);
    require(next);
    Eigen::Index n = E->cx->dim(k);
    Mat z = kernel_basis(E->cx->d_from(k));
    Mat b_all = E->cx->d_from(prev);
    std::vector<Eigen::Index> bpiv = independent_columns(b_all);
    Mat bmat(n, (Eigen::Index)bpiv.size());
    for (size_t i = 0; i < bpiv.size(); ++i) bmat.col((Eigen::Index)i) = b_all.col(bpiv[i]);
    Eigen::Index rb = bmat.cols();

    Hodge h;
    bool want_unit = (k == E->unit_key) && E->unit.size() == n && n > 0;
    Eigen::Index extra = want_unit ? 1 : 0;
    Mat cand(n, rb + extra + z.cols());
    cand.leftCols(rb) = bmat;
    if (want_unit) cand.col(rb) = E->unit;
    cand.rightCols(z.cols()) = z;
    Eigen::Index hdim = z.cols() - rb;
    Mat reps(n, hdim);
    Eigen::Index out = 0;
    for (Eigen::Index c : independent_columns(cand)) {
      if (c < rb) continue;
      if (want_unit && c == rb) {
        if (!(E->cx->d_from(k) * E->unit).isZero())
          throw internal_error("unit is not a cocycle");
        h.unit_first = true;
      }
      reps.col(out++) = cand.col(c);
    }
    if (out != hdim) throw internal_error("cohomology representative count mismatch");

    const Mat& w = wcomp(k);
    if (rb + hdim + w.cols() != n)
      throw internal_error("block splitting is not a direct sum");
    Mat full(n, 2 * n);
    full.leftCols(rb) = bmat;
    full.middleCols(rb, hdim) = reps;
    full.middleCols(rb + hdim, w.cols()) = w;
    full.rightCols(n) = Mat::Identity(n, n);
    std::vector<Eigen::Index> piv;
    rref_in_place(full, &piv);
    for (Eigen::Index i = 0; i < n; ++i)
      if ((Eigen::Index)piv.size() <= i || piv[(size_t)i] != i)
        throw internal_error("block splitting is not invertible");
    Mat inv = full.rightCols(n);
    h.sigma = reps;
    h.pi = inv.middleRows(rb, hdim);
    h.pb = inv.topRows(rb);
    h.bmat = std::move(bmat);
    return hodge_cache.emplace(k, std::move(h)).first->second;
  }

  // Homotopy on block k: inverts d from the kernel complement of the previous
  // block onto the image part, zero on representatives and on the complement.
  const Mat& hmat(BlockKey k) {
    auto it = h_cache.find(k);
    if (it != h_cache.end()) return it->second;
    const Hodge& hd = hodge(k);
    BlockKey prev{k.deg - 1, k.w};
    const Mat& wprev = wcomp(prev);
    Mat dw = E->cx->d_from(prev) * wprev;
    Mat x(wprev.cols(), hd.bmat.cols());
    for (Eigen::Index c = 0; c < hd.bmat.cols(); ++c) {
      auto sol = solve(dw, hd.bmat.col(c));
      if (!sol) throw internal_error("image basis not hit by the kernel complement");
      x.col(c) = *sol;
    }
    Mat h = wprev * x * hd.pb;
    return h_cache.emplace(k, std::move(h)).first->second;
  }

  EVal sigma_of(int gid) {
    BlockKey k = M->elem_block[gid];
    const Hodge& hd = hodge(k);
    return EVal{k, hd.sigma.col(M->elem_idx[gid])};
  }

  EVal lambda(const std::vector<int>& t);

  EVal hlam(const std::vector<int>& t) {
    if (t.size() == 1) return sigma_of(t[0]);
    EVal l = lambda(t);
    BlockKey prev{l.k.deg - 1, l.k.w};
    if (l.zero()) {
      Vec z(E->cx->dim(prev));
      z.setZero();
      return EVal{prev, z};
    }
    return EVal{prev, hmat(l.k) * l.v};
  }
};

// The recursion runs on suspended elements, where the homotopy-dressed
// operators all have degree zero and no Koszul signs appear.  The only sign
// is the suspension sign of the binary bar operation.
EVal TransferCtx::lambda(const std::vector<int>& t) {
  auto it = lam_memo.find(t);
  if (it != lam_memo.end()) return it->second;
  if (failed.count(t)) throw window_error("operation not certified at the current cutoffs");
  int n = (int)t.size();
  int degsum = 0, wsum = 0;
  for (int g : t) degsum += M->deg(g), wsum += M->wt(g);
  BlockKey out{degsum + 2 - n, wsum};
  EVal acc{out, Vec()};
  try {
    require(out);
    acc.v.resize(E->cx->dim(out));
    acc.v.setZero();
    for (int s = 1; s < n; ++s) {
      std::vector<int> left(t.begin(), t.begin() + s);
      std::vector<int> right(t.begin() + s, t.end());
      EVal u = hlam(left), v = hlam(right);
      if (u.zero() || v.zero()) continue;
      Rat c = (u.k.deg % 2 == 0) ? -1 : 1;  // (-1)^{|u| - 1}
      acc.v += c * mul_full(*E, u.k, u.v, v.k, v.v);
    }
  } catch (const window_error&) {
    failed.insert(t);
    throw;
  }
  lam_memo.emplace(t, acc);
  return acc;
}

// Enumerates non-unit basis tuples with bounded arity and total weight inside
// the window.  Pruning assumes the non-unit weights do not mix signs, which
// holds for the dgas handled here (Adams-nonnegative Ext sides,
// Adams-nonpositive dual sides).
template <typename F>
void enumerate_tuples(const AInfinityStructure& M, const std::vector<int>& pool,
                      int arity_max, F&& visit) {
  bool all_nonneg = true, all_nonpos = true;
  for (int g : pool) {
    if (M.wt(g) > 0) all_nonpos = false;
    if (M.wt(g) < 0) all_nonneg = false;
  }
  std::vector<int> cur;
  int wsum = 0;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() >= 2) visit(cur);
    if ((int)cur.size() == arity_max) return;
    for (int g : pool) {
      int w = wsum + M.wt(g);
      if (all_nonneg && w > M.w_hi) continue;
      if (all_nonpos && w < M.w_lo) continue;
      cur.push_back(g);
      wsum = w;
      self(self);
      cur.pop_back();
      wsum -= M.wt(g);
    }
  };
  rec(rec);
}

}  // namespace

int dec_sign_of(const std::vector<int>& degs) {
  int n = (int)degs.size();
  int e = 0;
  for (int j = 0; j < n; ++j) e += (n - 1 - j) * (degs[j] - 1);
  return (e % 2 == 0) ? 1 : -1;
}

MinimalModel transfer_minimal_model(const DgaView& E, int arity_max, int w_lo, int w_hi) {
  if (arity_max < 2) throw input_error("arity bound must be at least 2");
  if (w_lo > w_hi) throw input_error("empty weight window");
  MinimalModel mm;
  AInfinityStructure& M = mm.M;
  M.arity_max = arity_max;
  M.w_lo = w_lo;
  M.w_hi = w_hi;

  TransferCtx ctx;
  ctx.E = &E;
  ctx.M = &M;

  // Cohomology basis inside the window; blocks whose splitting cannot be
  // certified are left out entirely.
  for (const auto& [k, n] : E.cx->dims) {
    if (n == 0 || k.w < w_lo || k.w > w_hi) continue;
    try {
      const Hodge& hd = ctx.hodge(k);
      int hdim = (int)hd.sigma.cols();
      if (hdim == 0) continue;
      M.cx.dims[k] = hdim;
      std::vector<std::string>& labels = M.cx.labels[k];
      for (int i = 0; i < hdim; ++i)
        labels.push_back("h(" + std::to_string(k.deg) + "," + std::to_string(k.w) +
                         ")#" + std::to_string(i));
    } catch (const window_error&) {
      continue;
    }
  }
  M.index_basis();
  auto uit = M.gids.find(E.unit_key);
  if (uit != M.gids.end() && !uit->second.empty() &&
      ctx.hodge(E.unit_key).unit_first)
    M.unit_gid = uit->second[0];
  if (M.unit_gid < 0 && E.unit.size() > 0)
    throw window_error("unit class is outside the certified window");

  for (const auto& [k, hd] : ctx.hodge_cache) {
    if (!M.cx.dims.count(k)) continue;
    mm.T.sigma[k] = hd.sigma;
    mm.T.pi[k] = hd.pi;
  }

  std::vector<int> pool;
  for (int g = 0; g < M.n_elems(); ++g)
    if (g != M.unit_gid) pool.push_back(g);

  enumerate_tuples(M, pool, arity_max, [&](const std::vector<int>& t) {
    std::vector<int> degs;
    for (int g : t) degs.push_back(M.deg(g));
    // Suspension sign plus the gauge from running the recursion with h in
    // place of -h (one sign per internal tree edge).
    Rat dec = dec_sign_of(degs);
    Rat gauge = (t.size() % 2 == 0) ? 1 : -1;
    try {
      EVal l = ctx.lambda(t);
      if (!l.zero()) {
        const Hodge& hd = ctx.hodge(l.k);
        Vec mv = gauge * dec * (hd.pi * l.v);
        SparseVec sv;
        auto git = M.gids.find(l.k);
        for (Eigen::Index i = 0; i < mv.size(); ++i) {
          if (mv(i) == 0) continue;
          if (git == M.gids.end())
            throw window_error("operation lands outside the certified window");
          sv[git->second[(size_t)i]] = mv(i);
        }
        if (!sv.empty()) M.ops[t] = std::move(sv);
      }
      EVal fv = ctx.hlam(t);
      if (!fv.zero()) mm.f[t] = {fv.k, -gauge * dec * fv.v};
    } catch (const window_error&) {
      M.uncertified.insert(t);
    }
  });
  for (const auto& [k, hd] : ctx.hodge_cache) {
    if (!M.cx.dims.count(k) || mm.T.h.count(k)) continue;
    auto it = ctx.h_cache.find(k);
    if (it != ctx.h_cache.end()) mm.T.h[k] = it->second;
  }
  return mm;
}

AInfinityStructure ainfty_from_dga(const DgaView& E, int w_lo, int w_hi, int arity_max) {
  AInfinityStructure A;
  A.arity_max = arity_max;
  A.w_lo = w_lo;
  A.w_hi = w_hi;
  for (const auto& [k, n] : E.cx->dims) {
    if (n == 0 || !E.is_trusted(k)) continue;
    A.cx.dims[k] = n;
    auto lit = E.cx->labels.find(k);
    if (lit != E.cx->labels.end()) A.cx.labels[k] = lit->second;
    auto dit = E.cx->d.find(k);
    if (dit != E.cx->d.end()) A.cx.d[k] = dit->second;
  }
  A.index_basis();
  for (int g1 = 0; g1 < A.n_elems(); ++g1) {
    for (int g2 = 0; g2 < A.n_elems(); ++g2) {
      int w = A.wt(g1) + A.wt(g2);
      if (w < w_lo || w > w_hi) continue;
      std::vector<int> t{g1, g2};
      BlockKey k1 = A.elem_block[g1], k2 = A.elem_block[g2];
      BlockKey k{k1.deg + k2.deg, k1.w + k2.w};
      try {
        if (!E.is_trusted(k)) throw window_error("untrusted product block");
        Vec val = E.mul(k1, A.elem_idx[g1], k2, A.elem_idx[g2]);
        SparseVec sv;
        auto git = A.gids.find(k);
        for (Eigen::Index i = 0; i < val.size(); ++i) {
          if (val(i) == 0) continue;
          if (git == A.gids.end())
            throw window_error("product lands in an unindexed block");
          sv[git->second[(size_t)i]] = val(i);
        }
        if (!sv.empty()) A.ops[t] = std::move(sv);
      } catch (const window_error&) {
        A.uncertified.insert(t);
      }
    }
  }
  return A;
}

bool check_stasheff(const AInfinityStructure& A, int arity_max) {
  std::vector<int> pool;
  for (int g = 0; g < A.n_elems(); ++g) pool.push_back(g);
  bool ok = true;

  auto check_tuple = [&](const std::vector<int>& t) {
    if (!ok) return;
    int n = (int)t.size();
    SparseVec acc;
    try {
      for (int r = 0; r < n; ++r) {
        int pre_deg = 0;
        for (int i = 0; i < r; ++i) pre_deg += A.deg(t[i]);
        for (int s = 1; r + s <= n; ++s) {
          int tt = n - r - s;
          std::vector<int> inner(t.begin() + r, t.begin() + r + s);
          SparseVec mid = A.m(inner);
          if (mid.empty()) continue;
          int sgn_base = r + s * tt + s * pre_deg;
          for (const auto& [g, c] : mid) {
            std::vector<int> outer(t.begin(), t.begin() + r);
            outer.push_back(g);
            outer.insert(outer.end(), t.begin() + r + s, t.end());
            SparseVec outv = A.m(outer);
            Rat coeff = (sgn_base % 2 == 0) ? c : -c;
            for (const auto& [og, oc] : outv) {
              acc[og] += coeff * oc;
              if (acc[og] == 0) acc.erase(og);
            }
          }
        }
      }
    } catch (const window_error&) {
      return;  // identity not certifiable at these cutoffs
    }
    if (!acc.empty()) ok = false;
  };

  // Single entries (d^2 = 0) first, then longer tuples.
  for (int g : pool) check_tuple({g});
  bool all_nonneg = true, all_nonpos = true;
  for (int g : pool) {
    if (A.wt(g) > 0) all_nonpos = false;
    if (A.wt(g) < 0) all_nonneg = false;
  }
  std::vector<int> cur;
  int wsum = 0;
  auto rec = [&](auto&& self) -> void {
    if (!ok) return;
    if (cur.size() >= 2) check_tuple(cur);
    if ((int)cur.size() == arity_max) return;
    for (int g : pool) {
      int w = wsum + A.wt(g);
      if (all_nonneg && w > A.w_hi) continue;
      if (all_nonpos && w < A.w_lo) continue;
      cur.push_back(g);
      wsum = w;
      self(self);
      cur.pop_back();
      wsum -= A.wt(g);
    }
  };
  rec(rec);
  return ok;
}

MasseyResult massey_product(const DgaView& E,
                            const std::vector<std::pair<BlockKey, Vec>>& classes) {
  int r = (int)classes.size();
  if (r < 3) throw input_error("massey product needs at least three classes");
  for (const auto& [k, v] : classes) {
    if (!E.is_trusted(k) || !E.is_trusted(BlockKey{k.deg + 1, k.w}))
      throw window_error("massey input outside the certified window");
    if (!(E.cx->d_from(k) * v).isZero())
      throw input_error("massey inputs must be cocycles");
  }

  MasseyResult res;
  std::map<std::pair<int, int>, std::pair<BlockKey, Vec>> a;
  for (int i = 0; i < r; ++i) a[{i, i}] = classes[i];

  auto stage_rhs = [&](int i, int j) -> std::pair<BlockKey, Vec> {
    std::optional<std::pair<BlockKey, Vec>> acc;
    for (int k = i; k < j; ++k) {
      const auto& [ku, u] = a.at({i, k});
      const auto& [kv, v] = a.at({k + 1, j});
      Rat sgn = (ku.deg % 2 == 0) ? -1 : 1;  // (-1)^{1+deg}
      Vec term = sgn * mul_full(E, ku, u, kv, v);
      BlockKey kt{ku.deg + kv.deg, ku.w + kv.w};
      if (!acc) acc = {kt, term};
      else {
        if (acc->first != kt) throw internal_error("massey stage blocks disagree");
        acc->second += term;
      }
    }
    return *acc;
  };

  for (int len = 1; len <= r - 2; ++len) {
    for (int i = 0; i + len < r; ++i) {
      int j = i + len;
      auto [krhs, rhs] = stage_rhs(i, j);
      BlockKey kt{krhs.deg - 1, krhs.w};
      if (!E.is_trusted(kt) || !E.is_trusted(krhs))
        throw window_error("massey stage outside the certified window");
      auto x = solve(E.cx->d_from(kt), rhs);
      if (!x) return res;  // defining system obstruction: product undefined
      a[{i, j}] = {kt, *x};
    }
  }

  auto [kc, c] = stage_rhs(0, r - 1);
  res.defined = true;
  res.key = kc;
  res.representative = c;

  // Indeterminacy: u_1 . Z + Z' . u_r plus coboundaries.
  std::vector<Vec> cols;
  auto add_side = [&](bool left) {
    const auto& [ku, u] = left ? classes.front() : classes.back();
    BlockKey kz{kc.deg - ku.deg, kc.w - ku.w};
    if (E.cx->dim(kz) == 0) return;
    Mat z = kernel_basis(E.cx->d_from(kz));
    for (Eigen::Index i = 0; i < z.cols(); ++i)
      cols.push_back(left ? mul_full(E, ku, u, kz, z.col(i))
                          : mul_full(E, kz, z.col(i), ku, u));
  };
  add_side(true);
  add_side(false);
  Mat b = E.cx->d_from(BlockKey{kc.deg - 1, kc.w});
  for (Eigen::Index i = 0; i < b.cols(); ++i) cols.push_back(b.col(i));
  res.indeterminacy.resize(E.cx->dim(kc), (Eigen::Index)cols.size());
  for (size_t i = 0; i < cols.size(); ++i) res.indeterminacy.col((Eigen::Index)i) = cols[i];
  return res;
}

}  // namespace dca
