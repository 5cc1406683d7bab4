#include "dca/free_dga.hpp"

#include <algorithm>
#include <functional>

namespace dca {

int FreeDgaPresentation::gen_index(const std::string& name) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return (int)i;
  throw input_error("unknown generator '" + name + "'");
}

bool FreeDgaPresentation::word_composable(const std::vector<int>& w) const {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (gens[w[i]].tgt != gens[w[i + 1]].src) return false;
  return true;
}

int FreeDgaPresentation::word_deg(const std::vector<int>& w) const {
  int d = 0;
  for (int g : w) d += gens[g].deg;
  return d;
}

int FreeDgaPresentation::word_wt(const std::vector<int>& w) const {
  int s = 0;
  for (int g : w) s += gens[g].wt;
  return s;
}

std::string FreeDgaPresentation::word_str(const FreeWord& w) const {
  if (w.word.empty()) return "e_" + vertices[w.src];
  std::string s;
  for (size_t i = 0; i < w.word.size(); ++i) {
    if (i) s += " ";
    s += gens[w.word[i]].name;
  }
  return s;
}

void FreeDgaPresentation::validate() const {
  if (vertices.empty()) throw input_error("free dga needs at least one vertex");
  for (const FreeGen& g : gens) {
    if (g.src < 0 || g.src >= (int)vertices.size() || g.tgt < 0 ||
        g.tgt >= (int)vertices.size())
      throw input_error("generator '" + g.name + "' has a bad endpoint");
  }
  for (const auto& [gi, poly] : d) {
    if (gi < 0 || gi >= (int)gens.size()) throw input_error("differential on unknown generator");
    const FreeGen& g = gens[gi];
    for (const FreeTerm& t : poly) {
      if (t.word.empty()) throw input_error("empty word in differential of '" + g.name + "'");
      if (!word_composable(t.word))
        throw input_error("non-composable word in differential of '" + g.name + "'");
      if (gens[t.word.front()].src != g.src || gens[t.word.back()].tgt != g.tgt)
        throw input_error("differential of '" + g.name + "' is not parallel to it");
      if (word_deg(t.word) != g.deg + 1)
        throw input_error("differential of '" + g.name + "' is not of degree +1");
      if (word_wt(t.word) != g.wt)
        throw input_error("differential of '" + g.name + "' does not preserve weight");
    }
  }
}

FreePoly FreeDgaPresentation::diff_word(const std::vector<int>& w) const {
  std::map<std::vector<int>, Rat> acc;
  int sign = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    auto it = d.find(w[i]);
    if (it != d.end()) {
      for (const FreeTerm& t : it->second) {
        std::vector<int> nw(w.begin(), w.begin() + i);
        nw.insert(nw.end(), t.word.begin(), t.word.end());
        nw.insert(nw.end(), w.begin() + i + 1, w.end());
        Rat c = (sign % 2 == 0) ? t.coeff : -t.coeff;
        acc[nw] += c;
      }
    }
    sign += gens[w[i]].deg;
  }
  FreePoly out;
  for (auto& [word, c] : acc)
    if (c != 0) out.push_back(FreeTerm{c, word});
  return out;
}

void FreeDgaPresentation::check_d_squared() const {
  for (const auto& [gi, poly] : d) {
    std::map<std::vector<int>, Rat> acc;
    for (const FreeTerm& t : poly)
      for (const FreeTerm& u : diff_word(t.word)) acc[u.word] += t.coeff * u.coeff;
    for (const auto& [word, c] : acc)
      if (c != 0)
        throw internal_error("d^2 != 0 on generator '" + gens[gi].name + "'");
  }
}

FreeDgaTruncation truncate_free_dga(const FreeDgaPresentation& F, int w_lo, int w_hi) {
  F.validate();
  if (w_lo > 0 || w_hi < 0) throw input_error("weight window must contain 0");
  bool neg = true, pos = true;
  for (const FreeGen& g : F.gens) {
    if (g.wt >= 0) neg = false;
    if (g.wt <= 0) pos = false;
  }
  if (!(neg || pos) && !F.gens.empty())
    throw input_error("weight truncation needs generator weights of a single sign");

  FreeDgaTruncation T;
  T.pres = F;
  T.w_lo = w_lo;
  T.w_hi = w_hi;

  // All composable words inside the window, plus one empty word per vertex.
  std::vector<FreeWord> all;
  for (int v = 0; v < (int)F.vertices.size(); ++v) {
    FreeWord w{v, {}};
    std::function<void(int, int)> grow = [&](int at, int wt) {
      all.push_back(w);
      for (int g = 0; g < (int)F.gens.size(); ++g) {
        int nwt = wt + F.gens[g].wt;
        if (F.gens[g].src != at || nwt < w_lo || nwt > w_hi) continue;
        w.word.push_back(g);
        grow(F.gens[g].tgt, nwt);
        w.word.pop_back();
      }
    };
    grow(v, 0);
  }
  for (const FreeWord& w : all) {
    BlockKey k{F.word_deg(w.word), F.word_wt(w.word)};
    T.basis[k].push_back(w);
  }
  for (auto& [k, words] : T.basis) {
    std::sort(words.begin(), words.end());
    T.cx.dims[k] = (int)words.size();
    for (int i = 0; i < (int)words.size(); ++i) {
      T.index[k][words[i]] = i;
      T.cx.labels[k].push_back(F.word_str(words[i]));
    }
  }
  for (const auto& [k, words] : T.basis) {
    BlockKey nk{k.deg + 1, k.w};
    auto nit = T.index.find(nk);
    Mat m((Eigen::Index)(nit == T.index.end() ? 0 : nit->second.size()),
          (Eigen::Index)words.size());
    m.setZero();
    bool any = false;
    for (size_t c = 0; c < words.size(); ++c) {
      for (const FreeTerm& t : F.diff_word(words[c].word)) {
        FreeWord fw{words[c].src, t.word};
        m(nit->second.at(fw), (Eigen::Index)c) += t.coeff;
        any = true;
      }
    }
    if (any || m.rows() > 0) T.cx.d[k] = std::move(m);
  }
  return T;
}

Vec FreeDgaTruncation::mul_basis(BlockKey ka, int a, BlockKey kb, int b) const {
  BlockKey k{ka.deg + kb.deg, ka.w + kb.w};
  if (k.w < w_lo || k.w > w_hi)
    throw window_error("free dga product leaves the weight window");
  Vec out(cx.dim(k));
  out.setZero();
  const FreeWord& u = basis.at(ka)[a];
  const FreeWord& v = basis.at(kb)[b];
  int utgt = u.word.empty() ? u.src : pres.gens[u.word.back()].tgt;
  if (utgt != v.src) return out;
  FreeWord w{u.src, u.word};
  w.word.insert(w.word.end(), v.word.begin(), v.word.end());
  out(index.at(k).at(w)) = 1;
  return out;
}

Vec FreeDgaTruncation::unit() const {
  BlockKey k = unit_key();
  Vec out(cx.dim(k));
  out.setZero();
  for (int v = 0; v < (int)pres.vertices.size(); ++v)
    out(index.at(k).at(FreeWord{v, {}})) = 1;
  return out;
}

DgaView FreeDgaTruncation::view() const {
  DgaView vw;
  vw.cx = &cx;
  vw.mul = [this](BlockKey ka, int a, BlockKey kb, int b) {
    return mul_basis(ka, a, kb, b);
  };
  vw.unit_key = unit_key();
  vw.unit = unit();
  vw.trusted = [this](BlockKey k) { return k.w >= w_lo && k.w <= w_hi; };
  return vw;
}

}  // namespace dca
