#include "dca/ginzburg.hpp"

#include <algorithm>
#include <map>

namespace dca {

namespace {

void sort_poly(FreePoly& poly) {
  std::sort(poly.begin(), poly.end(),
            [](const FreeTerm& a, const FreeTerm& b) { return a.word < b.word; });
}

}  // namespace

PathPoly cyclic_derivative(const WeightedQuiverPresentation& p,
                           const Superpotential& W, int arrow) {
  if (arrow < 0 || arrow >= (int)p.arrows.size())
    throw input_error("cyclic derivative with respect to an unknown arrow");
  std::map<Word, Rat> acc;
  for (const CyclicTerm& t : W.terms) {
    for (size_t j = 0; j < t.word.size(); ++j) {
      if (t.word[j] != arrow) continue;
      if (t.word.size() == 1)
        throw input_error("cannot differentiate a single-arrow cycle");
      Word vu(t.word.begin() + j + 1, t.word.end());
      vu.insert(vu.end(), t.word.begin(), t.word.begin() + j);
      acc[vu] += t.coeff;
    }
  }
  PathPoly out;
  for (const auto& [w, c] : acc)
    if (c != 0) out.push_back(PathTerm{c, w});
  return out;
}

FreeDgaPresentation ginzburg_dga(const WeightedQuiverPresentation& p,
                                 const Superpotential& W) {
  int w_W = 0;
  for (const CyclicTerm& t : W.terms) {
    int w = p.word_weight(t.word);
    if (t.coeff == 0) continue;
    if (w_W == 0) w_W = w;
    else if (w != w_W)
      throw input_error("superpotential terms of mixed weight");
  }

  FreeDgaPresentation F;
  F.vertices = p.vertices;
  int na = (int)p.arrows.size();
  for (const Arrow& a : p.arrows)
    F.gens.push_back(FreeGen{a.name, 0, -a.weight, a.src, a.tgt});
  for (const Arrow& a : p.arrows)
    F.gens.push_back(FreeGen{a.name + "*", -1, a.weight - w_W, a.tgt, a.src});
  for (int v = 0; v < (int)p.vertices.size(); ++v) {
    std::string zn = p.vertices.size() == 1 ? "z" : "z_" + p.vertices[v];
    F.gens.push_back(FreeGen{zn, -2, -w_W, v, v});
  }

  for (int a = 0; a < na; ++a) {
    FreePoly poly;
    for (const PathTerm& t : cyclic_derivative(p, W, a)) {
      std::vector<int> word(t.word.begin(), t.word.end());
      poly.push_back(FreeTerm{-t.coeff, word});
    }
    sort_poly(poly);
    if (!poly.empty()) F.d[na + a] = std::move(poly);
  }
  for (int v = 0; v < (int)p.vertices.size(); ++v) {
    FreePoly poly;
    for (int a = 0; a < na; ++a) {
      if (p.arrows[a].src == v) poly.push_back(FreeTerm{1, {a, na + a}});
      if (p.arrows[a].tgt == v) poly.push_back(FreeTerm{-1, {na + a, a}});
    }
    sort_poly(poly);
    if (!poly.empty()) F.d[2 * na + v] = std::move(poly);
  }
  F.validate();
  F.check_d_squared();
  return F;
}

AlgebraPtr jacobi_algebra(const WeightedQuiverPresentation& p,
                          const Superpotential& W, int w_max) {
  WeightedQuiverPresentation q = p;
  q.relations.clear();
  for (int a = 0; a < (int)p.arrows.size(); ++a) {
    PathPoly poly = cyclic_derivative(p, W, a);
    if (poly.empty()) continue;
    int w = p.word_weight(poly.front().word);
    for (const PathTerm& t : poly)
      if (p.word_weight(t.word) != w)
        throw input_error("inhomogeneous cyclic derivative of '" +
                          p.arrows[a].name + "'");
    q.relations.push_back(Relation{poly});
  }
  q.validate();
  return TruncatedAlgebra::build(q, w_max);
}

InputDocument contraction_subquiver(const InputDocument& doc,
                                    const std::vector<int>& keep) {
  const WeightedQuiverPresentation& p = doc.presentation;
  std::vector<int> ks = keep;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.empty()) throw input_error("empty vertex set");
  std::vector<int> vmap(p.vertices.size(), -1);
  InputDocument out;
  for (int v : ks) {
    if (v < 0 || v >= (int)p.vertices.size())
      throw input_error("vertex index out of range");
    vmap[v] = (int)out.presentation.vertices.size();
    out.presentation.vertices.push_back(p.vertices[v]);
  }
  std::vector<int> amap(p.arrows.size(), -1);
  for (int a = 0; a < (int)p.arrows.size(); ++a) {
    const Arrow& ar = p.arrows[a];
    if (vmap[ar.src] < 0 || vmap[ar.tgt] < 0) continue;
    amap[a] = (int)out.presentation.arrows.size();
    out.presentation.arrows.push_back(
        Arrow{ar.name, vmap[ar.src], vmap[ar.tgt], ar.weight});
  }
  for (const Relation& r : p.relations) {
    Relation nr;
    bool alive = true;
    for (const PathTerm& t : r.terms) {
      Word w;
      for (int a : t.word) {
        if (amap[a] < 0) { alive = false; break; }
        w.push_back(amap[a]);
      }
      if (!alive) break;
      nr.terms.push_back(PathTerm{t.coeff, w});
    }
    if (alive) out.presentation.relations.push_back(nr);
  }
  for (int v : p.marked)
    if (vmap[v] >= 0) out.presentation.marked.push_back(vmap[v]);
  std::sort(out.presentation.marked.begin(), out.presentation.marked.end());

  for (const CyclicTerm& t : doc.superpotential.terms) {
    Word w;
    bool alive = true;
    for (int a : t.word) {
      if (amap[a] < 0) { alive = false; break; }
      w.push_back(amap[a]);
    }
    if (!alive) continue;
    CyclicTerm ct{t.coeff, canonical_rotation(w)};
    bool merged = false;
    for (CyclicTerm& prev : out.superpotential.terms)
      if (prev.word == ct.word) { prev.coeff += ct.coeff; merged = true; break; }
    if (!merged) out.superpotential.terms.push_back(ct);
  }
  std::erase_if(out.superpotential.terms,
                [](const CyclicTerm& t) { return t.coeff == 0; });
  out.has_superpotential = doc.has_superpotential;
  out.presentation.validate();
  return out;
}

}  // namespace dca
