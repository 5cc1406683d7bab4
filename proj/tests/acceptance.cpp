// End-to-end acceptance suite.  Each criterion prints exactly one PASS/FAIL
// line; details of a failure go to stderr.  Exit status is nonzero if any
// criterion fails.  Windows are chosen so every computed block is certified
// and each criterion stays well under a minute.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dca/drinfeld.hpp"
#include "dca/ginzburg.hpp"
#include "dca/pipeline.hpp"

using namespace dca;

namespace {

struct check_fail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(bool ok, const std::string& msg) {
  if (!ok) throw check_fail(msg);
}

InputDocument load(const std::string& name) {
  std::string path = std::string(DCA_CORPUS_DIR) + "/" + name + ".qvr";
  std::ifstream in(path);
  need(in.good(), "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

int simple_of(const InputDocument& doc) {
  for (int u = 0; u < (int)doc.presentation.vertices.size(); ++u)
    if (!doc.presentation.is_marked(u)) return u;
  throw check_fail("no unmarked vertex");
}

// Shared state across criteria: pipeline runs are memoized by name + window
// and every transferred model is registered for the structural suite.
struct RegisteredModel {
  std::string name;
  AInfinityStructure M;
  int arity;
};

struct Ctx {
  std::map<std::string, DcaResult> runs;
  std::vector<RegisteredModel> models;

  DcaResult& run(const std::string& file, const DcaCutoffs& c) {
    std::string key = file + "/" + std::to_string(c.w_max) + "/" +
                      std::to_string(c.hdeg_max) + "/" + std::to_string(c.arity_max);
    auto it = runs.find(key);
    if (it != runs.end()) return it->second;
    InputDocument doc = load(file);
    DcaResult r =
        derived_contraction_algebra(doc.presentation, simple_of(doc), c);
    auto [pos, fresh] = runs.emplace(key, std::move(r));
    if (fresh)
      models.push_back({key, pos->second.mm.M, c.arity_max});
    return pos->second;
  }

  void add_model(const std::string& name, const AInfinityStructure& M, int arity) {
    models.push_back({name, M, arity});
  }
};

// ---- free dga presentation helpers -------------------------------------

int gen_at(const FreeDgaPresentation& F, int deg, int wt) {
  int found = -1;
  for (int g = 0; g < (int)F.gens.size(); ++g)
    if (F.gens[g].deg == deg && F.gens[g].wt == wt) {
      need(found == -1, "generator bidegree not unique");
      found = g;
    }
  return found;
}

Rat coeff_of(const FreeDgaPresentation& F, const std::string& gen,
             const std::vector<std::string>& word) {
  std::vector<int> w;
  for (const auto& n : word) w.push_back(F.gen_index(n));
  auto it = F.d.find(F.gen_index(gen));
  if (it == F.d.end()) return 0;
  for (const FreeTerm& t : it->second)
    if (t.word == w) return t.coeff;
  return 0;
}

int d_terms(const FreeDgaPresentation& F, const std::string& gen) {
  auto it = F.d.find(F.gen_index(gen));
  return it == F.d.end() ? 0 : (int)it->second.size();
}

std::map<int, int> model_dims_by_degree(const AInfinityStructure& M) {
  std::map<int, int> out;
  for (int g = 0; g < M.n_elems(); ++g) out[M.deg(g)]++;
  return out;
}

// ---- the one-loop comparison dga ---------------------------------------

// C = k[xi, zeta] with |xi| = (0,-2), |zeta| = (-1,-2n) and d zeta = xi^n.
// Its cohomology is k[xi]/xi^n [eta] with eta = zeta^2, and every block is
// one-dimensional, so the transfer's Hodge data is forced.
struct OneLoopDga {
  int n = 0, w_abs = 0;
  BlockComplex cx;

  void build() {
    for (int b = 0; 2 * n * b <= w_abs + 2 * n; ++b)
      for (int a = 0; 2 * a + 2 * n * b <= w_abs; ++a)
        cx.dims[BlockKey{-b, -2 * a - 2 * n * b}] = 1;
    for (const auto& [k, dim] : cx.dims) {
      int b = -k.deg;
      BlockKey up{k.deg + 1, k.w};
      if (!cx.dims.count(up)) continue;
      Mat m(1, 1);
      m(0, 0) = (b % 2 == 1) ? 1 : 0;
      cx.d[k] = m;
    }
    cx.check_d_squared("one-loop comparison dga");
  }

  DgaView view() const {
    DgaView v;
    v.cx = &cx;
    v.unit_key = BlockKey{0, 0};
    v.unit = Vec::Constant(1, 1);
    v.mul = [this](BlockKey ka, int, BlockKey kb, int) {
      BlockKey kc{ka.deg + kb.deg, ka.w + kb.w};
      Vec out = Vec::Zero(cx.dims.count(kc) ? 1 : 0);
      if (out.size()) out(0) = 1;
      return out;
    };
    int w = w_abs;
    v.trusted = [w](BlockKey k) { return k.w >= -w; };
    return v;
  }
};

// ---- symbolic transfer recursion on C ----------------------------------

// Elements of C as (xi power, zeta power) -> coefficient.  The homotopy
// sends xi^a zeta^b with even b and a >= n to xi^{a-n} zeta^{b+1}; the
// projection keeps even b with a < n.  lambda_r is the usual two-block
// recursion with the sign (-1)^{s+1} and H_1 = -id.
using OElem = std::map<std::pair<int, int>, Rat>;

OElem omul(const OElem& x, const OElem& y) {
  OElem out;
  for (const auto& [p, a] : x)
    for (const auto& [q, b] : y) out[{p.first + q.first, p.second + q.second}] += a * b;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

OElem ohodge(const OElem& x, int n) {
  OElem out;
  for (const auto& [p, a] : x)
    if (p.second % 2 == 0 && p.first >= n) out[{p.first - n, p.second + 1}] = a;
  return out;
}

OElem oneg(OElem x) {
  for (auto& [p, a] : x) a = -a;
  return x;
}

OElem olambda(const std::vector<OElem>& xs, int lo, int hi, int n) {
  if (hi - lo == 1) return xs[lo];
  OElem out;
  for (int s = 1; s < hi - lo; ++s) {
    OElem ls = olambda(xs, lo, lo + s, n);
    OElem lt = olambda(xs, lo + s, hi, n);
    OElem term = omul(s == 1 ? oneg(ls) : ohodge(ls, n),
                      hi - lo - s == 1 ? oneg(lt) : ohodge(lt, n));
    Rat sign = (s % 2 == 0) ? -1 : 1;
    for (const auto& [p, a] : term) out[p] += sign * a;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// Transferred operation on classes eta^i xi^j, as ((i, j), coefficient);
// returns coefficient 0 when the operation vanishes.
std::pair<std::pair<int, int>, Rat> oracle_op(
    const std::vector<std::pair<int, int>>& classes, int n) {
  std::vector<OElem> xs;
  for (auto [i, j] : classes) xs.push_back({{{j, 2 * i}, 1}});
  OElem v = olambda(xs, 0, (int)xs.size(), n);
  std::erase_if(v, [n](const auto& kv) {
    return kv.first.second % 2 != 0 || kv.first.first >= n;
  });
  if (v.empty()) return {{0, 0}, 0};
  need(v.size() == 1, "recursion value is not a monomial");
  auto [p, c] = *v.begin();
  return {{p.second / 2, p.first}, c};
}

// Closed form: m_r(eta^{i_1} xi^{j_1}, ..) = C'_r eta^{I + r/2 - 1}
// xi^{J - n(r-2)} when r is even and n(r-2) <= J < n(r-1), else zero,
// with C'_r = -(-1)^{r/2} C_{r/2 - 1} a signed shifted Catalan number.
const long kCatalan[] = {0, 1, 1, 2, 5, 14};

Rat closed_form(int r, int I, int J, int n, std::pair<int, int>* tgt) {
  if (r % 2 != 0 || J < n * (r - 2) || J >= n * (r - 1)) return 0;
  *tgt = {I + r / 2 - 1, J - n * (r - 2)};
  return Rat(-((r / 2) % 2 == 0 ? 1 : -1) * kCatalan[r / 2]);
}

// Verify a minimal model whose classes are the monomials eta^i xi^j against
// a reference operation table, up to a diagonal rescaling of the classes
// solved from a product chain.  `oracle` switches the reference between the
// closed form and the symbolic recursion; with the recursion we also check
// that every nonzero reference operation agrees with the closed form.
void check_pagoda_model(const AInfinityStructure& M, int n, int w_abs, bool oracle) {
  std::map<std::pair<int, int>, int> gid;
  std::map<int, std::pair<int, int>> ij;
  for (int g = 0; g < M.n_elems(); ++g) {
    int d = M.deg(g), w = M.wt(g);
    need(d % 2 == 0 && d <= 0, "class of odd or positive degree");
    int i = -d / 2;
    int j2 = -w - 4 * n * i;
    need(j2 >= 0 && j2 % 2 == 0, "class off the monomial grid");
    int j = j2 / 2;
    need(j < n || (i == 0 && j == 0), "xi power not reduced");
    need(!gid.count({i, j}), "repeated class");
    gid[{i, j}] = g;
    ij[g] = {i, j};
  }
  need(gid.count({0, 0}) && (n < 2 || gid.count({0, 1})) && gid.count({1, 0}),
       "expected classes missing");

  auto ref = [&](const std::vector<int>& t, std::pair<int, int>* tgt) -> Rat {
    std::vector<std::pair<int, int>> cls;
    int I = 0, J = 0;
    for (int g : t) {
      cls.push_back(ij.at(g));
      I += ij.at(g).first;
      J += ij.at(g).second;
    }
    if (!oracle) return closed_form((int)t.size(), I, J, n, tgt);
    auto [p, c] = oracle_op(cls, n);
    if (c != 0) {
      *tgt = p;
      std::pair<int, int> ft;
      Rat fc = closed_form((int)t.size(), I, J, n, &ft);
      need(fc == c && ft == p, "recursion disagrees with the closed form");
    }
    return c;
  };
  auto mach = [&](const std::vector<int>& t, int* tgt) -> Rat {
    auto it = M.ops.find(t);
    if (it == M.ops.end() || it->second.empty()) return 0;
    need(it->second.size() == 1, "operation is not a monomial");
    *tgt = it->second.begin()->first;
    return it->second.begin()->second;
  };

  // Diagonal gauge: normalize 1, xi, solve the xi row by m_2 against xi,
  // then eta from any nonvanishing arity-4 operation on xi powers, then the
  // rest by multiplication with eta.
  std::map<std::pair<int, int>, Rat> mu;
  mu[{0, 0}] = 1;
  if (gid.count({0, 1})) mu[{0, 1}] = 1;
  for (int j = 2; j < n; ++j) {
    int tg = -1;
    Rat c = mach({gid.at({0, 1}), gid.at({0, j - 1})}, &tg);
    need(c != 0 && tg == gid.at({0, j}), "xi product chain broken");
    mu[{0, j}] = mu.at({0, 1}) * mu.at({0, j - 1}) / c;
  }
  {
    bool solved = false;
    std::vector<int> js(4, 1);
    for (js[0] = 1; js[0] < n && !solved; ++js[0])
      for (js[1] = 1; js[1] < n && !solved; ++js[1])
        for (js[2] = 1; js[2] < n && !solved; ++js[2]) {
          js[3] = 2 * n - js[0] - js[1] - js[2];
          if (js[3] < 1 || js[3] >= n) continue;
          std::vector<int> t;
          Rat prod = 1;
          for (int j : js) {
            t.push_back(gid.at({0, j}));
            prod *= mu.at({0, j});
          }
          std::pair<int, int> rt;
          Rat rc = ref(t, &rt);
          int tg = -1;
          Rat c = mach(t, &tg);
          if (rc == 0 || c == 0) continue;
          need(rt == std::make_pair(1, 0) && tg == gid.at({1, 0}),
               "eta-producing operation has the wrong target");
          mu[{1, 0}] = rc * prod / c;
          solved = true;
        }
    need(solved, "no nonzero eta-producing arity-4 operation");
  }
  for (const auto& [p, g] : gid) {
    auto [i, j] = p;
    if (mu.count(p)) continue;
    int tg = -1;
    Rat c = mach({gid.at({1, 0}), gid.at({i - 1, j})}, &tg);
    need(c != 0 && tg == g, "eta product chain broken");
    mu[p] = mu.at({1, 0}) * mu.at({i - 1, j}) / c;
  }

  std::vector<int> nonunit;
  for (const auto& [p, g] : gid)
    if (p != std::make_pair(0, 0)) nonunit.push_back(g);
  std::map<int, long> nonzero_by_arity;
  std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& t,
                                                        int wsum) {
    if (t.size() >= 2 && !M.uncertified.count(t)) {
      Rat prod = 1;
      for (int g : t) prod *= mu.at(ij.at(g));
      std::pair<int, int> rt;
      Rat rc = ref(t, &rt);
      int tg = -1;
      Rat c = mach(t, &tg);
      if (rc == 0) {
        need(c == 0, "unexpected nonzero operation");
      } else {
        need(gid.count(rt), "reference target outside the window");
        need(c == rc * prod / mu.at(rt) && tg == gid.at(rt),
             "operation disagrees with the reference");
        nonzero_by_arity[(int)t.size()]++;
      }
    }
    if (t.size() == 6) return;
    for (int g : nonunit) {
      if (wsum + M.wt(g) < -w_abs) continue;
      t.push_back(g);
      rec(t, wsum + M.wt(g));
      t.pop_back();
    }
  };
  std::vector<int> t0;
  rec(t0, 0);
  need(nonzero_by_arity[2] > 0 && nonzero_by_arity[4] > 0,
       "reference table never exercised");
}

// ---- relative bar complex (independent Tor oracle) ---------------------

BlockComplex relative_bar(const TruncatedAlgebra& A, int hdeg_max, int w_max) {
  const WeightedQuiverPresentation& p = A.pres;
  std::map<BlockKey, std::vector<std::vector<int>>> basis;
  std::map<BlockKey, std::map<std::vector<int>, int>> index;
  for (int id = 0; id < A.total_dim(); ++id)
    if (A.basis[id].weight <= w_max)
      basis[BlockKey{0, A.basis[id].weight}].push_back({id});
  int levels = hdeg_max + 2;
  for (int n = 1; n <= levels; ++n) {
    std::vector<int> cur;
    int wsum = 0;
    std::function<void(int, int)> grow = [&](int slot, int at) {
      if (slot == n + 1) {
        basis[BlockKey{-n, wsum}].push_back(cur);
        return;
      }
      for (int id = 0; id < A.total_dim(); ++id) {
        const BasisMon& b = A.basis[id];
        if (wsum + b.weight > w_max) continue;
        if (slot > 0 && b.src != at) continue;
        if (slot == 0 || slot == n) {
          if (!p.is_marked(slot == 0 ? b.tgt : b.src)) continue;
        } else {
          if (b.weight == 0 || !p.is_marked(b.src) || !p.is_marked(b.tgt)) continue;
        }
        cur.push_back(id);
        wsum += b.weight;
        grow(slot + 1, b.tgt);
        cur.pop_back();
        wsum -= b.weight;
      }
    };
    grow(0, -1);
  }
  BlockComplex cx;
  for (auto& [k, tuples] : basis) {
    std::sort(tuples.begin(), tuples.end());
    cx.dims[k] = (int)tuples.size();
    for (int i = 0; i < (int)tuples.size(); ++i) index[k][tuples[i]] = i;
    if (k.deg == -levels) cx.incomplete[k] = true;
  }
  for (const auto& [k, tuples] : basis) {
    if (k.deg == 0) continue;
    BlockKey nk{k.deg + 1, k.w};
    auto nit = index.find(nk);
    Mat m((Eigen::Index)(nit == index.end() ? 0 : nit->second.size()),
          (Eigen::Index)tuples.size());
    m.setZero();
    for (size_t c = 0; c < tuples.size(); ++c) {
      const std::vector<int>& t = tuples[c];
      for (size_t i = 0; i + 1 < t.size(); ++i) {
        Rat sgn = (i % 2 == 0) ? 1 : -1;
        for (const auto& [z, coef] : A.mul_mon(t[i], t[i + 1])) {
          if (i > 0 && i + 2 < t.size() && A.basis[z].weight == 0) continue;
          std::vector<int> nt(t.begin(), t.begin() + i);
          nt.push_back(z);
          nt.insert(nt.end(), t.begin() + i + 2, t.end());
          auto f = nit->second.find(nt);
          need(f != nit->second.end(), "bar tuple left the window");
          m(f->second, (Eigen::Index)c) += sgn * coef;
        }
      }
    }
    cx.d[k] = std::move(m);
  }
  cx.check_d_squared("relative bar");
  return cx;
}

// Every monomial of every relation passes through a marked vertex in its
// interior.  When that fails the canonical marking falls back to an endpoint
// or formal split, whose class can be a boundary, so the marked-relation
// rank only bounds dim H^{-1} from above.
bool honestly_split(const WeightedQuiverPresentation& p) {
  for (const Relation& r : p.relations)
    for (const PathTerm& t : r.terms) {
      bool ok = false;
      for (size_t k = 1; k < t.word.size(); ++k)
        if (p.is_marked(p.arrows[t.word[k - 1]].tgt)) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
  return true;
}

// ---- generator matchings against the Ginzburg construction ------------

// Does g -> lam[g] . K-generator match[g] intertwine the differentials?
bool rescaling_works(const FreeDgaPresentation& G, const FreeDgaPresentation& K,
                     const std::vector<int>& match, const std::vector<Rat>& lam) {
  for (int g = 0; g < (int)G.gens.size(); ++g) {
    std::map<std::vector<int>, Rat> lhs;
    if (auto it = G.d.find(g); it != G.d.end())
      for (const FreeTerm& t : it->second) {
        Rat c = t.coeff;
        std::vector<int> w;
        for (int i : t.word) {
          c *= lam[i];
          w.push_back(match[i]);
        }
        lhs[w] += c;
      }
    if (auto it = K.d.find(match[g]); it != K.d.end())
      for (const FreeTerm& t : it->second) lhs[t.word] -= lam[g] * t.coeff;
    for (const auto& [w, c] : lhs)
      if (c != 0) return false;
  }
  return true;
}

std::vector<int> bidegree_match(const FreeDgaPresentation& G,
                                const FreeDgaPresentation& K) {
  std::vector<int> match(G.gens.size(), -1);
  for (int g = 0; g < (int)G.gens.size(); ++g) {
    match[g] = gen_at(K, G.gens[g].deg, G.gens[g].wt);
    need(match[g] >= 0, "no generator with matching bidegree");
  }
  return match;
}

// ---- command-line runs (for the determinism criterion) -----------------

std::string run_cli(const std::string& args) {
  std::string cmd = std::string(DCA_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  need(p != nullptr, "popen failed");
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  need(WIFEXITED(st) && WEXITSTATUS(st) == 0, "command failed: " + args);
  return out;
}

// ---- criteria ----------------------------------------------------------

void criterion_1(Ctx& ctx) {
  DcaResult& r = ctx.run("atiyah", {10, 6, 3});
  std::map<int, int> ext = model_dims_by_degree(r.mm.M);
  need(ext == std::map<int, int>{{0, 1}, {3, 1}}, "Ext series is not 1 + t^3");
  const FreeDgaPresentation& F = r.dual.pres;
  need((int)F.gens.size() == 1, "dual is not on a single generator");
  need(F.gens[0].name == "eta" && F.gens[0].deg == -2, "generator is not eta in degree -2");
  need(d_terms(F, "eta") == 0, "differential is not zero");
}

void criterion_2(Ctx& ctx) {
  for (int n = 2; n <= 4; ++n) {
    std::string tag = "pagoda" + std::to_string(n);
    DcaResult& r = ctx.run(tag, {2 * n + 6, 6, n + 1});
    std::map<int, int> ext = model_dims_by_degree(r.mm.M);
    need(ext == std::map<int, int>{{0, 1}, {1, 1}, {2, 1}, {3, 1}},
         tag + ": Ext series is not 1 + t + t^2 + t^3");
    int f1 = r.mm.M.gid_of({1, 2}, 0);
    int f2 = r.mm.M.gid_of({2, 2 * n}, 0);
    int higher = 0;
    for (const auto& [t, v] : r.mm.M.ops) {
      if (t.size() < 3 || v.empty()) continue;
      ++higher;
      need((int)t.size() == n, tag + ": higher operation of unexpected arity");
      for (int g : t) need(g == f1, tag + ": higher operation not on f1 tuples");
      need(v.size() == 1 && v.begin()->first == f2 && v.begin()->second != 0,
           tag + ": higher operation is not a multiple of f2");
    }
    need(higher == (n == 2 ? 0 : 1), tag + ": wrong number of higher operations");

    const FreeDgaPresentation& F = r.dual.pres;
    need((int)F.gens.size() == 3, tag + ": dual not on three generators");
    need(gen_at(F, 0, -2) == F.gen_index("xi") &&
             gen_at(F, -1, -2 * n) == F.gen_index("zeta") &&
             gen_at(F, -2, -2 * n - 2) == F.gen_index("theta"),
         tag + ": dual generator bidegrees are off");
    need(d_terms(F, "xi") == 0, tag + ": xi is not a cycle");
    need(d_terms(F, "zeta") == 1 &&
             coeff_of(F, "zeta", std::vector<std::string>(n, "xi")) != 0,
         tag + ": d zeta is not a multiple of xi^n");
    Rat a = coeff_of(F, "theta", {"xi", "zeta"});
    Rat b = coeff_of(F, "theta", {"zeta", "xi"});
    need(d_terms(F, "theta") == 2 && a != 0 && b == -a,
         tag + ": d theta is not a multiple of [xi, zeta]");
  }
}

void criterion_3(Ctx& ctx) {
  // n = 2: the transferred model of the actual derived contraction algebra
  // matches the closed form on every windowed tuple.
  {
    DcaResult& r = ctx.run("pagoda2", {10, 6, 4});
    FreeDgaTruncation T = truncate_free_dga(r.dual.pres, -20, 0);
    MinimalModel mm = transfer_minimal_model(T.view(), 6, -20, 0);
    check_pagoda_model(mm.M, 2, 20, false);
    ctx.add_model("pagoda2 dual transfer", mm.M, 6);
  }
  // n = 2, 3, 4 on the one-loop dga, against the transfer recursion; the
  // recursion itself is checked against the closed form wherever it is
  // nonzero (reorderings at the weight edge of the closed form's range can
  // vanish, which the recursion reports and the machinery reproduces).
  for (int n = 2; n <= 4; ++n) {
    int w_abs = n == 2 ? 20 : 24;
    OneLoopDga C{n, w_abs};
    C.build();
    MinimalModel mm = transfer_minimal_model(C.view(), 6, -w_abs, 0);
    check_pagoda_model(mm.M, n, w_abs, true);
    ctx.add_model("one-loop n=" + std::to_string(n), mm.M, 6);
    // tie the comparison dga to the pipeline output: same cohomology table
    DcaResult& r = ctx.run("pagoda" + std::to_string(n), {2 * n + 6, 6, n + 1});
    CohomologyTable H = free_dga_cohomology(r.dual.pres, 2 * n + 6);
    CohomologyTable HC = cohomology(C.cx);
    for (const auto& [k, d] : H.dims) {
      if (!H.is_certified(k) || d == 0) continue;
      need(HC.dims.count(k) && HC.dims.at(k) == d,
           "dual cohomology differs from the one-loop dga");
    }
  }
}

void criterion_4(Ctx& ctx) {
  DcaResult& r = ctx.run("laufer", {14, 4, 4});
  CohomologyTable H = cohomology(r.E->cx);
  std::map<BlockKey, int> ext;
  for (const auto& [k, d] : H.dims)
    if (d != 0 && H.is_certified(k) && k.deg <= 3) ext[k] = d;
  std::map<BlockKey, int> want{{{0, 0}, 1}, {{1, 2}, 1}, {{1, 3}, 1},
                               {{2, 5}, 1}, {{2, 6}, 1}, {{3, 8}, 1}};
  need(ext == want, "Ext is not 6-dimensional with degrees 1,2,2,1");

  // <g, g, g> contains -f^2 exactly
  DgaView V = view_of(*r.E);
  Vec g = H.reps.at({1, 2}).col(0);
  Vec f = H.reps.at({1, 3}).col(0);
  BlockKey kf{1, 3}, kff{2, 6};
  Vec ff = Vec::Zero(r.E->cx.dims.at(kff));
  for (Eigen::Index i = 0; i < f.size(); ++i)
    for (Eigen::Index j = 0; j < f.size(); ++j)
      if (f(i) != 0 && f(j) != 0) ff += f(i) * f(j) * V.mul(kf, (int)i, kf, (int)j);
  MasseyResult m = massey_product(V, {{{1, 2}, g}, {{1, 2}, g}, {{1, 2}, g}});
  need(m.defined && m.key == kff, "<g,g,g> is not defined in the f^2 block");
  need(!in_span(m.indeterminacy, m.representative), "<g,g,g> vanishes");
  need(in_span(m.indeterminacy, Vec(m.representative + ff)) ||
           in_span(m.indeterminacy, Vec(m.representative - ff)),
       "<g,g,g> does not contain plus or minus f^2");

  // presentation: generator bidegrees and differential supports
  const FreeDgaPresentation& F = r.dual.pres;
  need((int)F.gens.size() == 5, "dual not on five generators");
  int gy = gen_at(F, 0, -2), gx = gen_at(F, 0, -3), gz = gen_at(F, -1, -5),
      gxi = gen_at(F, -1, -6), gth = gen_at(F, -2, -8);
  need(gy >= 0 && gx >= 0 && gz >= 0 && gxi >= 0 && gth >= 0,
       "generator bidegrees are off");
  std::string y = F.gens[gy].name, x = F.gens[gx].name, z = F.gens[gz].name,
              xi = F.gens[gxi].name, th = F.gens[gth].name;
  need(d_terms(F, y) == 0 && d_terms(F, x) == 0, "degree-0 generators not cycles");
  need(d_terms(F, z) == 2 && coeff_of(F, z, {x, y}) != 0 &&
           coeff_of(F, z, {y, x}) != 0,
       "d of the weight-5 generator is not supported on xy, yx");
  need(d_terms(F, xi) == 2 && coeff_of(F, xi, {y, y, y}) != 0 &&
           coeff_of(F, xi, {x, x}) != 0,
       "d of the weight-6 generator is not supported on y^3, x^2");
  need(d_terms(F, th) == 4 && coeff_of(F, th, {y, xi}) != 0 &&
           coeff_of(F, th, {xi, y}) != 0 && coeff_of(F, th, {x, z}) != 0 &&
           coeff_of(F, th, {z, x}) != 0,
       "d of the degree -2 generator has the wrong support");

  // H^0 is the quantum cusp k<x,y>/(xy + yx, x^2 - y^3) through weight 18
  InputDocument cusp = parse_document(
      "vertex v\n"
      "arrow x: v -> v weight 3\n"
      "arrow y: v -> v weight 2\n"
      "relation x y + y x\n"
      "relation x x - y y y\n"
      "mark v\n");
  AlgebraPtr Q = TruncatedAlgebra::build(cusp.presentation, 18);
  CohomologyTable HD = free_dga_cohomology(F, 18);
  for (int w = 0; w <= 18; ++w) {
    BlockKey k{0, -w};
    need(!HD.dims.count(k) || HD.is_certified(k), "H^0 block not certified");
    int h = HD.dims.count(k) ? HD.dims.at(k) : 0;
    need(h == Q->dim_weight(w), "H^0 differs from the quantum cusp at weight " +
                                    std::to_string(w));
  }
}

void criterion_5(Ctx& ctx) {
  for (int n = 2; n <= 4; ++n) {
    std::string tag = "pagoda" + std::to_string(n);
    InputDocument sub = contraction_subquiver(load(tag), {1});
    FreeDgaPresentation G = ginzburg_dga(sub.presentation, sub.superpotential);
    const FreeDgaPresentation& K = ctx.run(tag, {2 * n + 6, 6, n + 1}).dual.pres;
    std::vector<int> match = bidegree_match(G, K);
    Rat cz = coeff_of(K, "zeta", std::vector<std::string>(n, "xi"));
    Rat ct = coeff_of(K, "theta", {"xi", "zeta"});
    need(cz != 0 && ct != 0, tag + ": dual differential coefficients vanish");
    std::vector<Rat> lam{1, Rat(-2) / cz, Rat(-2) / (cz * ct)};
    need(rescaling_works(G, K, match, lam), tag + ": no dga isomorphism");
  }

  InputDocument sub = contraction_subquiver(load("laufer"), {1});
  FreeDgaPresentation G = ginzburg_dga(sub.presentation, sub.superpotential);
  const FreeDgaPresentation& K = ctx.run("laufer", {14, 4, 4}).dual.pres;
  std::vector<int> match = bidegree_match(G, K);
  need(G.gens[0].name == "x" && G.gens[1].name == "y", "unexpected generator order");
  // dual generator names via the matched bidegrees
  std::string kx = K.gens[match[0]].name, ky = K.gens[match[1]].name,
              kxs = K.gens[match[2]].name, kys = K.gens[match[3]].name,
              kzz = K.gens[match[4]].name;
  Rat cxx = coeff_of(K, kys, {kx, kx});
  Rat cyyy = coeff_of(K, kys, {ky, ky, ky});
  Rat cxy = coeff_of(K, kxs, {kx, ky});
  Rat ctheta = coeff_of(K, kzz, {kx, kxs});
  need(cxx != 0 && cyyy != 0 && cxy != 0 && ctheta != 0,
       "laufer: dual differential coefficients vanish");
  // lx^2 / ly^3 = -cxx / cyyy solves with lx = r^2, ly = r
  Rat r = -cxx / cyyy;
  Rat rsq = r * r;
  bool ok = false;
  for (const Rat& lx : {rsq, Rat(-rsq)}) {
    Rat ly = r;
    Rat lxs = -lx * ly / cxy;
    Rat lys = ly * ly * ly / cyyy;
    Rat lz = lx * lxs / ctheta;
    ok = ok || rescaling_works(G, K, match, {lx, ly, lxs, lys, lz});
  }
  need(ok, "laufer: no dga isomorphism");
}

void criterion_6(Ctx& ctx) {
  {
    DcaResult& r = ctx.run("slice1", {10, 6, 3});
    const FreeDgaPresentation& F = r.dual.pres;
    need((int)F.gens.size() == 1 && F.gens[0].deg == -1 &&
             d_terms(F, F.gens[0].name) == 0,
         "slice1: dual is not free on one degree -1 generator");
    CohomologyTable H = free_dga_cohomology(F, 10);
    for (int d = 0; d >= -5; --d) {
      int tot = 0;
      for (const auto& [k, v] : H.dims)
        if (k.deg == d && H.is_certified(k)) tot += v;
      need(tot == 1, "slice1: cohomology not one-dimensional per degree");
    }
  }
  for (int n = 2; n <= 3; ++n) {
    std::string tag = "slice" + std::to_string(n);
    DcaResult& r = ctx.run(tag, {n == 2 ? 16 : 20, 8, n + 2});
    std::map<int, int> ext = model_dims_by_degree(r.mm.M);
    need(ext[0] == 1 && ext[1] == 0 && ext[2] == 1 && ext[3] == 1 && ext[4] == 1,
         tag + ": Ext dims are not (1, 0, 1, 1, ...)");
    int w_abs = n == 2 ? 14 : 24;
    CohomologyTable H = free_dga_cohomology(r.dual.pres, w_abs);
    for (int d = 0; d >= -5; --d) {
      int tot = 0;
      for (const auto& [k, v] : H.dims)
        if (k.deg == d && H.is_certified(k)) tot += v;
      need(tot == 1, tag + ": cohomology not one-dimensional per degree");
    }
    FreeDgaTruncation T = truncate_free_dga(r.dual.pres, -w_abs, 0);
    MinimalModel mm = transfer_minimal_model(T.view(), n + 1, -w_abs, 0);
    ctx.add_model(tag + " dual transfer", mm.M, n + 1);
    int zeta = mm.M.gid_of({-1, -2 * n}, 0);
    int eta = mm.M.gid_of({-2, -2 * (n + 1)}, 0);
    // eta^n by repeated m_2 with eta
    int etan = eta;
    for (int i = 1; i < n; ++i) {
      auto it = mm.M.ops.find({eta, etan});
      need(it != mm.M.ops.end() && it->second.size() == 1,
           tag + ": eta power chain broken");
      etan = it->second.begin()->first;
    }
    auto it = mm.M.ops.find(std::vector<int>(n + 1, zeta));
    need(it != mm.M.ops.end() && !it->second.empty(),
         tag + ": m_{n+1}(zeta, ..., zeta) vanishes");
    for (const auto& [g, c] : it->second)
      need(mm.M.deg(g) == -2 * n && mm.M.wt(g) == n * mm.M.wt(eta) && c != 0,
           tag + ": m_{n+1}(zeta, ..., zeta) lands outside the eta^n block");
    // The eta^n block is one-dimensional only while the truncated dual
    // presentation is complete there; that covers n = 2, where the exact
    // match is asserted.  For n = 3 completing the block needs resolution
    // depth 9, so the check above stops at the bidegree.
    if (n == 2)
      need(it->second.size() == 1 && it->second.begin()->first == etan,
           tag + ": m_{n+1}(zeta, ..., zeta) is not a multiple of eta^n");
  }
}

void criterion_7(Ctx&) {
  InputDocument doc = load("quiv1");
  AlgebraPtr A = TruncatedAlgebra::build(doc.presentation, 8);
  need(A->certify_finite(), "algebra not certified finite");
  need(A->total_dim() == 9, "dim A != 9");
  need(A->corner_algebra()->total_dim() == 4, "dim eAe != 4");
  need(A->quotient_by_idempotent_ideal()->total_dim() == 1, "dim A/AeA != 1");
  MarkedRelationsResult mr = marked_relations(A);
  need(mr.rank == 2, "marked relation rank != 2");
  std::set<std::string> basis;
  for (int i : mr.basis) basis.insert(mr.classes[i].text);
  need(basis == std::set<std::string>{"|w - y|z", "z|x y"},
       "marked-relation basis mismatch");
}

void criterion_8(Ctx& ctx) {
  struct W {
    std::string file;
    int wp, hp, wd, hd, wb;
  };
  const std::vector<W> windows = {
      {"atiyah", 10, 6, 5, 2, 4},  {"pagoda1", 10, 6, 5, 2, 4},
      {"pagoda2", 12, 6, 8, 2, 6}, {"pagoda3", 14, 6, 8, 2, 6},
      {"pagoda4", 14, 6, 8, 2, 6}, {"laufer", 14, 4, 8, 2, 6},
      {"slice1", 10, 6, 6, 2, 4},  {"slice2", 12, 6, 8, 2, 6},
      {"slice3", 14, 6, 8, 2, 6},  {"quiv1", 8, 5, 5, 2, 5},
  };
  for (const W& w : windows) {
    DcaResult& r = ctx.run(w.file, {w.wp, w.hp, 4});
    CohomologyTable HF = free_dga_cohomology(r.dual.pres, w.wp);
    DrinfeldModel B = drinfeld_model(r.A, w.hd, w.wd);
    CohomologyTable HD = dq_cohomology(B);

    // dims agree on the shared certified window
    for (int j = 0; j >= -w.hd; --j)
      for (int wt = 0; wt <= w.wd; ++wt) {
        BlockKey kd{j, wt}, kf{j, -wt};
        if (!HD.is_certified(kd) || !HF.is_certified(kf)) continue;
        int a = HD.dims.count(kd) ? HD.dims.at(kd) : 0;
        int b = HF.dims.count(kf) ? HF.dims.at(kf) : 0;
        need(a == b, w.file + ": derived quotient and dual cohomology differ at (" +
                         std::to_string(j) + ", " + std::to_string(wt) + ")");
      }

    // marked relations against dim H^{-1}
    MarkedRelationsResult mr = marked_relations(r.A, w.wd);
    int h1 = 0;
    for (int wt = 0; wt <= w.wd; ++wt) {
      BlockKey k{-1, wt};
      if (HD.is_certified(k) && HD.dims.count(k)) h1 += HD.dims.at(k);
    }
    if (honestly_split(r.A->pres))
      need(mr.rank == h1, w.file + ": marked relation rank != dim H^{-1}");
    else
      need(mr.rank >= h1, w.file + ": marked relation rank below dim H^{-1}");

    // H^0 structure constants against A/AeA
    AlgebraPtr Q = r.A->quotient_by_idempotent_ideal();
    auto torep = [&](int wt, int i) {
      const Mat& reps = HD.reps.at({0, wt});
      AlgebraElement out = Q->zero();
      const auto& tuples = B.basis.at({0, wt});
      for (Eigen::Index rr = 0; rr < reps.rows(); ++rr) {
        if (reps(rr, i) == 0) continue;
        const BasisMon& bm = r.A->basis[tuples[rr][0]];
        AlgebraElement el =
            bm.word.empty() ? Q->idempotent(bm.src) : Q->path_element(bm.word);
        out = Q->add(out, Q->scale(reps(rr, i), el));
      }
      return out;
    };
    for (int w1 = 0; w1 <= w.wd; ++w1)
      for (int w2 = 0; w1 + w2 <= w.wd; ++w2) {
        BlockKey k1{0, w1}, k2{0, w2}, k3{0, w1 + w2};
        if (!HD.is_certified(k1) || !HD.is_certified(k2) || !HD.is_certified(k3))
          continue;
        int d1 = HD.dims.count(k1) ? HD.dims.at(k1) : 0;
        int d2 = HD.dims.count(k2) ? HD.dims.at(k2) : 0;
        int d3 = HD.dims.count(k3) ? HD.dims.at(k3) : 0;
        need(d3 == Q->dim_weight(w1 + w2), w.file + ": H^0 dim differs from A/AeA");
        for (int i = 0; i < d1; ++i)
          for (int j = 0; j < d2; ++j) {
            Vec prod = h0_mul(B, HD, w1, i, w2, j);
            AlgebraElement lhs = Q->zero();
            for (Eigen::Index t = 0; t < prod.size(); ++t)
              if (prod(t) != 0)
                lhs = Q->add(lhs, Q->scale(prod(t), torep(w1 + w2, (int)t)));
            AlgebraElement rhs = Q->multiply(torep(w1, i), torep(w2, j));
            AlgebraElement diff = Q->add(lhs, Q->scale(-1, rhs));
            need(diff.is_zero(), w.file + ": H^0 structure constants differ");
          }
      }

    // relative bar oracle for degrees below -1
    CohomologyTable HB = cohomology(relative_bar(*r.A, w.hd, w.wb));
    for (int j = -2; j >= -w.hd; --j)
      for (int wt = 0; wt <= w.wb; ++wt) {
        BlockKey k{j, wt};
        if (!HB.is_certified(k) || !HD.is_certified(k)) continue;
        int a = HB.dims.count(k) ? HB.dims.at(k) : 0;
        int b = HD.dims.count(k) ? HD.dims.at(k) : 0;
        need(a == b, w.file + ": relative bar and Drinfeld dims differ");
      }
  }
}

void criterion_9(Ctx& ctx) {
  // complexes: resolutions verify d^2 = 0 and exactness, block complexes
  // re-check d^2 explicitly
  for (const std::string& name : {"atiyah", "laufer", "slice2", "quiv1"}) {
    InputDocument doc = load(name);
    AlgebraPtr A = TruncatedAlgebra::build(doc.presentation, 10);
    ProjectiveComplex C = resolve_simple(A, simple_of(doc), 4, 10);
    need(verify_complex(C), name + ": resolution fails verification");
    DrinfeldModel B = drinfeld_model(A, 2, 5);
    B.cx.check_d_squared(name + " drinfeld");
  }
  for (const std::string& name : {"atiyah", "pagoda3", "laufer"}) {
    DcaResult& r = ctx.run(name, name == "atiyah" ? DcaCutoffs{10, 6, 3}
                                 : name == "pagoda3" ? DcaCutoffs{12, 6, 4}
                                                     : DcaCutoffs{14, 4, 4});
    FreeDgaTruncation T = truncate_free_dga(r.dual.pres, -12, 0);
    T.cx.check_d_squared(name + " dual truncation");
  }

  // Stasheff identities on every transferred model collected so far
  need(!ctx.models.empty(), "no models were collected");
  for (const RegisteredModel& m : ctx.models)
    need(check_stasheff(m.M, m.arity), m.name + ": Stasheff identities fail");

  // Leibniz and associativity on endomorphism dgas (small windows: the
  // check enumerates all element tuples)
  for (const std::string& name : {"atiyah", "laufer"}) {
    InputDocument doc = load(name);
    AlgebraPtr A = TruncatedAlgebra::build(doc.presentation, 5);
    ProjectiveComplex C = resolve_simple(A, simple_of(doc), 3, 5);
    EndomorphismDga E = end_dga(C);
    AInfinityStructure M = ainfty_from_dga(view_of(E), 0, 5, 3);
    need(check_stasheff(M, 3), name + ": endomorphism dga fails Leibniz");
  }

  // superpotentials: sum of commutators with the cyclic derivatives vanishes
  for (const std::string& name :
       {"pagoda1", "pagoda2", "pagoda3", "pagoda4", "laufer"}) {
    InputDocument doc = load(name);
    need(doc.has_superpotential, name + ": superpotential missing");
    const WeightedQuiverPresentation& p = doc.presentation;
    std::map<Word, Rat> acc;
    for (int a = 0; a < (int)p.arrows.size(); ++a)
      for (const PathTerm& t : cyclic_derivative(p, doc.superpotential, a)) {
        Word left{a};
        left.insert(left.end(), t.word.begin(), t.word.end());
        Word right = t.word;
        right.push_back(a);
        acc[left] += t.coeff;
        acc[right] -= t.coeff;
      }
    for (const auto& [w, c] : acc)
      need(c == 0, name + ": commutator sum does not vanish");
  }

  // double dual recovers the model for three Artinian examples
  need(double_dual_check(ctx.run("atiyah", {10, 6, 3}).mm.M, 3, 10),
       "atiyah: double dual disagrees");
  need(double_dual_check(ctx.run("pagoda2", {10, 6, 4}).mm.M, 4, 10),
       "pagoda2: double dual disagrees");
  need(double_dual_check(ctx.run("laufer", {14, 4, 4}).mm.M, 4, 14),
       "laufer: double dual disagrees");

  // degree-shift periodicity at the dimension level
  struct P {
    std::string file;
    DcaCutoffs c;
    int w_abs, deg_lo;
  };
  for (const P& p : std::vector<P>{{"atiyah", {10, 6, 3}, 10, -4},
                                   {"pagoda2", {10, 6, 4}, 18, -4},
                                   {"pagoda3", {12, 6, 4}, 16, -2}}) {
    CohomologyTable H = free_dga_cohomology(ctx.run(p.file, p.c).dual.pres, p.w_abs);
    need(eta_periodicity_check(H, p.deg_lo), p.file + ": periodicity fails");
  }
  {
    // laufer: the periodicity class sits at weight -18, so the weight-summed
    // helper would need a window of 28; check the dimension shift per weight
    CohomologyTable H =
        free_dga_cohomology(ctx.run("laufer", {14, 4, 4}).dual.pres, 24);
    auto dim = [&H](int d, int w) {
      BlockKey k{d, -w};
      need(!H.dims.count(k) || H.is_certified(k), "block not certified");
      return H.dims.count(k) ? H.dims.at(k) : 0;
    };
    need(dim(-2, 18) == 1, "laufer: periodicity class missing at weight -18");
    for (int w = 0; w <= 6; ++w)
      need(dim(-2, 18 + w) == dim(0, w) && dim(-1, w) == 0 && dim(-3, 18 + w) == 0,
           "laufer: periodicity fails at weight " + std::to_string(w));
  }
}

void criterion_10(Ctx&) {
  std::vector<std::string> names = {"atiyah", "pagoda1", "pagoda2", "pagoda3",
                                    "pagoda4", "laufer",  "slice1",  "slice2",
                                    "slice3",  "quiv1"};
  std::vector<std::string> cmds;
  for (const std::string& n : names) {
    std::string f = std::string(DCA_CORPUS_DIR) + "/" + n + ".qvr";
    cmds.push_back("check " + f + " --json");
    cmds.push_back("dq-cohomology " + f + " --max-weight 5 --max-hdeg 2 --json");
  }
  std::string laufer = std::string(DCA_CORPUS_DIR) + "/laufer.qvr";
  std::string atiyah = std::string(DCA_CORPUS_DIR) + "/atiyah.qvr";
  std::string pagoda3 = std::string(DCA_CORPUS_DIR) + "/pagoda3.qvr";
  std::string quiv1 = std::string(DCA_CORPUS_DIR) + "/quiv1.qvr";
  cmds.push_back("dca " + atiyah +
                 " --simple 2 --max-weight 10 --max-hdeg 6 --max-arity 3 --json");
  cmds.push_back("dca " + laufer +
                 " --simple 2 --max-weight 14 --max-hdeg 4 --max-arity 4 --json");
  cmds.push_back("koszul-dual " + pagoda3 +
                 " --simple 2 --max-weight 12 --max-hdeg 6 --max-arity 4 --json");
  cmds.push_back("ext " + laufer + " --simple 2 --max-weight 14 --max-hdeg 4 --json");
  cmds.push_back("massey " + laufer +
                 " --simple 2 --max-weight 14 --max-hdeg 4 --fold 3 --json");
  cmds.push_back("marked-relations " + quiv1 + " --max-weight 6 --json");
  cmds.push_back("ginzburg " + laufer + " --json");
  cmds.push_back("jacobi " + laufer + " --max-weight 10 --json");
  cmds.push_back("double-dual-check " + atiyah +
                 " --simple 2 --max-weight 10 --max-hdeg 6 --max-arity 3 --json");
  std::string first, second;
  for (const std::string& c : cmds) first += run_cli(c);
  for (const std::string& c : cmds) second += run_cli(c);
  need(!first.empty() && first == second, "reruns are not byte-identical");
}

}  // namespace

int main() {
  struct Crit {
    int num;
    const char* name;
    void (*fn)(Ctx&);
  };
  const Crit table[] = {
      {1, "atiyah flop", criterion_1},
      {2, "pagoda family", criterion_2},
      {3, "pagoda catalan model", criterion_3},
      {4, "laufer flop", criterion_4},
      {5, "ginzburg consistency", criterion_5},
      {6, "a_n slices", criterion_6},
      {7, "marked example", criterion_7},
      {8, "cross-oracle suite", criterion_8},
      {9, "structural suite", criterion_9},
      {10, "determinism", criterion_10},
  };
  Ctx ctx;
  int failures = 0;
  for (const Crit& c : table) {
    bool ok = false;
    try {
      c.fn(ctx);
      ok = true;
    } catch (const std::exception& e) {
      std::cerr << "criterion " << c.num << ": " << e.what() << "\n";
    }
    if (!ok) ++failures;
    std::cout << "criterion " << c.num << " (" << c.name
              << "): " << (ok ? "PASS" : "FAIL") << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
