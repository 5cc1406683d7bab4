#include "dca/koszul.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace dca {

namespace {

// Koszul sign of the dual pairing: moving each dual generator past the
// suspended classes it skips before pairing off.
int pairing_sign(const std::vector<int>& degs) {
  int e = 0;
  for (size_t i = 0; i < degs.size(); ++i)
    for (size_t j = i + 1; j < degs.size(); ++j) e += (degs[i] - 1) * (degs[j] - 1);
  return (e % 2 == 0) ? 1 : -1;
}

// Generator names for the dual, by role: weights decide among x/y and
// zeta/xi; the degree -2 generator is theta, or eta when there are no
// degree 0 generators alongside it.
std::vector<std::string> dual_names(const std::vector<FreeGen>& gens) {
  std::vector<std::string> names(gens.size());
  std::map<int, std::vector<int>> by_deg;
  for (size_t i = 0; i < gens.size(); ++i) by_deg[gens[i].deg].push_back((int)i);
  std::set<std::string> used;
  auto take = [&](int i, const std::string& primary, const std::string& fallback) {
    std::string n = used.count(primary) ? fallback : primary;
    if (used.count(n)) n = n + "'";
    used.insert(n);
    names[i] = n;
  };
  for (auto& [deg, idx] : by_deg)
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return gens[a].wt < gens[b].wt; });
  if (by_deg.count(0)) {
    auto& idx = by_deg[0];
    if (idx.size() == 1) take(idx[0], "xi", "x");
    else if (idx.size() == 2) {
      take(idx[0], "x", "x1");
      take(idx[1], "y", "y1");
    } else
      for (size_t i = 0; i < idx.size(); ++i)
        take(idx[i], "x" + std::to_string(i + 1), "v" + std::to_string(i + 1));
  }
  if (by_deg.count(-1)) {
    auto& idx = by_deg[-1];  // least negative weight first
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return gens[a].wt > gens[b].wt; });
    if (idx.size() == 1) take(idx[0], "zeta", "z");
    else if (idx.size() == 2) {
      take(idx[0], "zeta", "zeta1");
      take(idx[1], "xi", "zeta2");
    } else
      for (size_t i = 0; i < idx.size(); ++i)
        take(idx[i], "zeta" + std::to_string(i + 1), "w" + std::to_string(i + 1));
  }
  if (by_deg.count(-2)) {
    auto& idx = by_deg[-2];
    if (idx.size() == 1) take(idx[0], by_deg.count(0) ? "theta" : "eta", "theta1");
    else
      for (size_t i = 0; i < idx.size(); ++i)
        take(idx[i], "theta" + std::to_string(i + 1), "t" + std::to_string(i + 1));
  }
  for (auto& [deg, idx] : by_deg) {
    if (deg == 0 || deg == -1 || deg == -2) continue;
    for (size_t i = 0; i < idx.size(); ++i)
      take(idx[i], "g" + std::to_string(idx[i]), "h" + std::to_string(idx[i]));
  }
  return names;
}

}  // namespace

BarTruncation bar_construction(const AInfinityStructure& M) {
  BarTruncation B;
  std::vector<int> pool;
  for (int g = 0; g < M.n_elems(); ++g) {
    if (g == M.unit_gid) continue;
    if (M.wt(g) == 0)
      throw input_error("bar construction needs nonzero class weights");
    pool.push_back(g);
  }
  // all words with total weight inside the model window
  std::vector<std::vector<int>> words;
  std::vector<int> cur;
  int wsum = 0;
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty()) words.push_back(cur);
    for (int g : pool) {
      int w = wsum + M.wt(g);
      if (w < M.w_lo || w > M.w_hi) continue;
      cur.push_back(g);
      wsum = w;
      self(self);
      cur.pop_back();
      wsum -= M.wt(g);
    }
  };
  rec(rec);

  for (const auto& t : words) {
    int deg = 0, w = 0;
    for (int g : t) deg += M.deg(g) - 1, w += M.wt(g);
    BlockKey k{deg, w};
    B.basis[k].push_back(t);
  }
  for (auto& [k, ws] : B.basis) {
    std::sort(ws.begin(), ws.end());
    B.cx.dims[k] = (int)ws.size();
    for (int i = 0; i < (int)ws.size(); ++i) {
      B.index[k][ws[i]] = i;
      std::string label;
      for (size_t j = 0; j < ws[i].size(); ++j) {
        if (j) label += "|";
        label += M.label(ws[i][j]);
      }
      B.cx.labels[k].push_back(label);
    }
  }
  for (const auto& [k, ws] : B.basis) {
    BlockKey nk{k.deg + 1, k.w};
    auto nit = B.index.find(nk);
    Mat m((Eigen::Index)(nit == B.index.end() ? 0 : nit->second.size()),
          (Eigen::Index)ws.size());
    m.setZero();
    for (size_t c = 0; c < ws.size(); ++c) {
      const std::vector<int>& t = ws[c];
      int n = (int)t.size();
      for (int r = 0; r < n; ++r) {
        int kos = 0;
        for (int i = 0; i < r; ++i) kos += M.deg(t[i]) - 1;
        for (int s = 2; r + s <= n; ++s) {
          std::vector<int> inner(t.begin() + r, t.begin() + r + s);
          std::vector<int> idegs;
          int ideg = 0, iwt = 0;
          for (int g : inner) {
            idegs.push_back(M.deg(g));
            ideg += M.deg(g);
            iwt += M.wt(g);
          }
          // nothing to land on: skip without consulting the operation table
          BlockKey tk{ideg + 2 - s, iwt};
          int room = 0;
          auto git = M.gids.find(tk);
          if (git != M.gids.end())
            for (int z : git->second)
              if (z != M.unit_gid) ++room;
          if (room == 0) continue;
          SparseVec mid = M.m(inner);  // may throw window_error
          if (mid.empty()) continue;
          Rat sgn = Rat(dec_sign_of(idegs)) * ((kos % 2 == 0) ? 1 : -1);
          for (const auto& [z, coef] : mid) {
            std::vector<int> nw(t.begin(), t.begin() + r);
            nw.push_back(z);
            nw.insert(nw.end(), t.begin() + r + s, t.end());
            m(nit->second.at(nw), (Eigen::Index)c) += sgn * coef;
          }
        }
      }
    }
    B.cx.d[k] = std::move(m);
  }
  return B;
}

KoszulDual koszul_dual(const AInfinityStructure& M) {
  if (M.unit_gid < 0) throw input_error("koszul dual needs a unital model");
  for (const auto& [k, m] : M.cx.d)
    if (!m.isZero()) throw input_error("koszul dual needs a minimal model");
  int sign_seen = 0;
  for (int g = 0; g < M.n_elems(); ++g) {
    if (g == M.unit_gid) continue;
    if (M.elem_block[g] == BlockKey{0, 0})
      throw input_error("koszul dual needs a local model: extra class in bidegree (0,0)");
    int w = M.wt(g);
    if (w == 0) throw input_error("koszul dual needs nonzero class weights");
    if (sign_seen == 0) sign_seen = (w > 0) ? 1 : -1;
    else if (sign_seen * w < 0)
      throw input_error("koszul dual needs class weights of a single sign");
  }

  KoszulDual out;
  out.pres.vertices = {"*"};
  std::map<int, int> gen_of;
  for (int g = 0; g < M.n_elems(); ++g) {
    if (g == M.unit_gid) continue;
    gen_of[g] = (int)out.pres.gens.size();
    out.pres.gens.push_back(FreeGen{"", 1 - M.deg(g), -M.wt(g), 0, 0});
    out.gen_gid.push_back(g);
  }
  std::vector<std::string> names = dual_names(out.pres.gens);
  for (size_t i = 0; i < names.size(); ++i) out.pres.gens[i].name = names[i];

  // Any uncertified tuple that could pair against a generator poisons the
  // differential of that generator.
  for (const auto& t : M.uncertified) {
    int deg = 0, w = 0;
    for (int g : t) deg += M.deg(g), w += M.wt(g);
    BlockKey k{deg + 2 - (int)t.size(), w};
    for (int g = 0; g < M.n_elems(); ++g)
      if (g != M.unit_gid && M.elem_block[g] == k)
        throw window_error("koszul dual differential not certified at the cutoffs");
  }

  for (const auto& [t, sv] : M.ops) {
    std::vector<int> degs, word;
    for (int g : t) {
      degs.push_back(M.deg(g));
      word.push_back(gen_of.at(g));
    }
    Rat base = Rat(pairing_sign(degs)) * Rat(dec_sign_of(degs));
    for (const auto& [x, c] : sv) {
      int xd = 1 - M.deg(x);  // degree of the dual generator
      Rat sgn = ((1 + xd) % 2 == 0) ? base : -base;  // (-1)^{1+|x*|}
      out.pres.d[gen_of.at(x)].push_back(FreeTerm{sgn * c, word});
    }
  }
  for (auto& [g, poly] : out.pres.d)
    std::sort(poly.begin(), poly.end(),
              [](const FreeTerm& a, const FreeTerm& b) { return a.word < b.word; });
  out.pres.validate();
  return out;
}

bool double_dual_check(const AInfinityStructure& M, int arity_max, int w_abs) {
  KoszulDual k1 = koszul_dual(M);
  k1.pres.check_d_squared();
  bool dual_pos = true;
  for (const FreeGen& g : k1.pres.gens)
    if (g.wt < 0) dual_pos = false;
  int lo = dual_pos ? 0 : -w_abs, hi = dual_pos ? w_abs : 0;
  FreeDgaTruncation T = truncate_free_dga(k1.pres, lo, hi);
  T.cx.check_d_squared("koszul dual truncation");
  MinimalModel mm = transfer_minimal_model(T.view(), arity_max, lo, hi);
  KoszulDual k2 = koszul_dual(mm.M);
  k2.pres.check_d_squared();
  FreeDgaTruncation T2 = truncate_free_dga(k2.pres, dual_pos ? -w_abs : 0,
                                           dual_pos ? 0 : w_abs);
  CohomologyTable H = cohomology(T2.cx);
  for (const auto& [k, n] : H.dims) {
    if (std::abs(k.w) > w_abs) continue;
    int want = (k == BlockKey{0, 0}) ? 1 : M.cx.dim(k);  // unit block: just 1
    if (n != want) return false;
  }
  for (const auto& [k, n] : M.cx.dims) {
    if (n == 0 || std::abs(k.w) > w_abs) continue;
    auto it = H.dims.find(k);
    if (it == H.dims.end() || it->second != n) return false;
  }
  return true;
}

}  // namespace dca
