#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dca/ginzburg.hpp"
#include "dca/report.hpp"

using namespace dca;

namespace {

struct Flags {
  int max_weight = 0, max_hdeg = 0, max_arity = 0, fold = 0;
  std::string simple;
  bool json = false;
};

int need(int v, const std::string& flag) {
  if (v <= 0) throw input_error("missing or invalid " + flag);
  return v;
}

int simple_vertex(const WeightedQuiverPresentation& p, const Flags& f) {
  if (f.simple.empty()) throw input_error("missing --simple");
  int v = p.vertex_index(f.simple);
  if (v < 0) throw input_error("unknown vertex '" + f.simple + "'");
  return v;
}

Json window_json(const Flags& f) {
  Json w;
  if (f.max_weight > 0) w["max_weight"] = f.max_weight;
  if (f.max_hdeg > 0) w["max_hdeg"] = f.max_hdeg;
  if (f.max_arity > 0) w["max_arity"] = f.max_arity;
  return w;
}

std::string hilbert_series(const std::map<int, int>& by_deg) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [deg, n] : by_deg) {
    if (n == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (deg == 0) {
      os << n;
      continue;
    }
    if (n != 1) os << n << " ";
    os << "t";
    if (deg != 1) os << "^" << deg;
  }
  if (first) os << "0";
  return os.str();
}

struct Output {
  Json j;
  std::string extra_text;  // appended after the generic rendering
};

Output cmd_check(const InputDocument& doc) {
  Output out;
  const WeightedQuiverPresentation& p = doc.presentation;
  out.j["vertices"] = (int)p.vertices.size();
  out.j["arrows"] = (int)p.arrows.size();
  out.j["relations"] = (int)p.relations.size();
  Json marked = Json::array();
  for (int v : p.marked) marked.push_back(p.vertices[v]);
  out.j["marked"] = marked;
  out.j["superpotential_terms"] =
      doc.has_superpotential ? (int)doc.superpotential.terms.size() : 0;
  out.j["round_trip"] =
      print_document(parse_document(print_document(doc))) == print_document(doc);
  return out;
}

Output cmd_algebra(const InputDocument& doc, const Flags& f) {
  Output out;
  AlgebraPtr A =
      TruncatedAlgebra::build(doc.presentation, need(f.max_weight, "--max-weight"));
  bool fin = A->certify_finite();
  out.j["finite"] = fin;
  if (fin) out.j["total_dim"] = A->total_dim();
  out.j["dims"] = algebra_dims_json(*A);
  out.j["corner_dims"] = algebra_dims_json(*A->corner_algebra());
  out.j["quotient_dims"] = algebra_dims_json(*A->quotient_by_idempotent_ideal());
  return out;
}

Output cmd_resolve(const InputDocument& doc, const Flags& f) {
  Output out;
  AlgebraPtr A =
      TruncatedAlgebra::build(doc.presentation, need(f.max_weight, "--max-weight"));
  int v = simple_vertex(doc.presentation, f);
  ProjectiveComplex C =
      resolve_simple(A, v, need(f.max_hdeg, "--max-hdeg"), f.max_weight);
  Json terms = Json::array();
  for (size_t n = 0; n < C.terms.size(); ++n) {
    Json row;
    row["deg"] = -(int)n;
    Json sums = Json::array();
    for (const Summand& s : C.terms[n])
      sums.push_back(doc.presentation.vertices[s.vertex] + "(" +
                     std::to_string(s.shift) + ")");
    row["summands"] = sums;
    terms.push_back(row);
  }
  out.j["terms"] = terms;
  out.j["finished"] = C.finished;
  out.j["certified_weight"] = C.cert_weight;
  return out;
}

Output cmd_ext(const InputDocument& doc, const Flags& f) {
  Output out;
  AlgebraPtr A =
      TruncatedAlgebra::build(doc.presentation, need(f.max_weight, "--max-weight"));
  int v = simple_vertex(doc.presentation, f);
  ProjectiveComplex C =
      resolve_simple(A, v, need(f.max_hdeg, "--max-hdeg"), f.max_weight);
  EndomorphismDga E = end_dga(C);
  CohomologyTable H = cohomology(E.cx);
  std::map<int, int> by_deg;
  for (const auto& [k, n] : H.dims)
    if (H.is_certified(k) && k.deg >= 0 && k.deg <= f.max_hdeg) by_deg[k.deg] += n;
  out.j["hilbert"] = hilbert_series(by_deg);
  Json degs = Json::array();
  for (const auto& [deg, n] : by_deg) {
    Json row;
    row["deg"] = deg;
    row["dim"] = n;
    degs.push_back(row);
  }
  out.j["dims_by_degree"] = degs;
  Json blocks = Json::array();
  for (const auto& b : cohomology_json(H))
    if (b["certified"].get<bool>()) blocks.push_back(b);
  out.j["blocks"] = blocks;
  return out;
}

Output cmd_minimal_model(const InputDocument& doc, const Flags& f) {
  Output out;
  AlgebraPtr A =
      TruncatedAlgebra::build(doc.presentation, need(f.max_weight, "--max-weight"));
  int v = simple_vertex(doc.presentation, f);
  ProjectiveComplex C =
      resolve_simple(A, v, need(f.max_hdeg, "--max-hdeg"), f.max_weight);
  EndomorphismDga E = end_dga(C);
  MinimalModel mm = transfer_minimal_model(
      view_of(E), need(f.max_arity, "--max-arity"), 0, f.max_weight);
  const AInfinityStructure& M = mm.M;
  Json classes = Json::array();
  for (int g = 0; g < M.n_elems(); ++g) {
    Json row;
    row["label"] = M.label(g);
    row["deg"] = M.deg(g);
    row["weight"] = M.wt(g);
    classes.push_back(row);
  }
  out.j["classes"] = classes;
  Json ops = Json::array();
  for (const auto& [t, sv] : M.ops) {
    if (sv.empty()) continue;
    Json row;
    row["arity"] = (int)t.size();
    Json args = Json::array();
    for (int g : t) args.push_back(M.label(g));
    row["args"] = args;
    Json val = Json::array();
    for (const auto& [g, c] : sv) {
      Json term;
      term["coeff"] = rat_str(c);
      term["class"] = M.label(g);
      val.push_back(term);
    }
    row["value"] = val;
    ops.push_back(row);
  }
  out.j["operations"] = ops;
  out.j["uncertified_tuples"] = (int)M.uncertified.size();
  return out;
}

Output cmd_dca(const InputDocument& doc, const Flags& f, bool full) {
  Output out;
  int v = simple_vertex(doc.presentation, f);
  DcaCutoffs c{need(f.max_weight, "--max-weight"), need(f.max_hdeg, "--max-hdeg"),
               need(f.max_arity, "--max-arity")};
  DcaResult r = derived_contraction_algebra(doc.presentation, v, c);
  if (full) {
    out.j["window"] = window_json(f);
    out.j["quotient_finite"] = r.quotient_finite;
  }
  out.j["presentation"] = presentation_json(r.dual.pres);
  out.extra_text = presentation_text(r.dual.pres);
  return out;
}

Output cmd_dq_cohomology(const InputDocument& doc, const Flags& f) {
  Output out;
  AlgebraPtr A =
      TruncatedAlgebra::build(doc.presentation, need(f.max_weight, "--max-weight"));
  CohomologyTable H =
      dq_cohomology(A, need(f.max_hdeg, "--max-hdeg"), f.max_weight);
  Json degs = Json::array();
  for (int j = 0; j >= -f.max_hdeg; --j) {
    Json row;
    row["deg"] = j;
    row["dim"] = H.dim_degree(j);
    degs.push_back(row);
  }
  out.j["dims_by_degree"] = degs;
  Json blocks = Json::array();
  for (const auto& b : cohomology_json(H))
    if (b["deg"].get<int>() >= -f.max_hdeg) blocks.push_back(b);
  out.j["blocks"] = blocks;
  MarkedRelationsResult mr = marked_relations(A, f.max_weight);
  out.j["marked_relation_rank"] = mr.rank;
  return out;
}

Output cmd_marked_relations(const InputDocument& doc, const Flags& f) {
  Output out;
  AlgebraPtr A =
      TruncatedAlgebra::build(doc.presentation, need(f.max_weight, "--max-weight"));
  MarkedRelationsResult mr = marked_relations(A, f.max_weight);
  out.j["rank"] = mr.rank;
  out.j["marking_count_bound"] = mr.ell_bound;
  out.j["dimension_bound"] = mr.dim_bound;
  Json basis = Json::array();
  for (int i : mr.basis) basis.push_back(mr.classes[i].text);
  out.j["basis"] = basis;
  Json classes = Json::array();
  for (const MarkedRelation& m : mr.classes) classes.push_back(m.text);
  out.j["classes"] = classes;
  return out;
}

Output cmd_ginzburg(const InputDocument& doc) {
  if (!doc.has_superpotential)
    throw input_error("input has no superpotential");
  Output out;
  FreeDgaPresentation F = ginzburg_dga(doc.presentation, doc.superpotential);
  out.j["presentation"] = presentation_json(F);
  out.extra_text = presentation_text(F);
  return out;
}

Output cmd_jacobi(const InputDocument& doc, const Flags& f) {
  if (!doc.has_superpotential)
    throw input_error("input has no superpotential");
  Output out;
  AlgebraPtr J = jacobi_algebra(doc.presentation, doc.superpotential,
                                need(f.max_weight, "--max-weight"));
  bool fin = J->certify_finite();
  out.j["finite"] = fin;
  if (fin) out.j["total_dim"] = J->total_dim();
  out.j["dims"] = algebra_dims_json(*J);
  return out;
}

Output cmd_massey(const InputDocument& doc, const Flags& f) {
  Output out;
  AlgebraPtr A =
      TruncatedAlgebra::build(doc.presentation, need(f.max_weight, "--max-weight"));
  int v = simple_vertex(doc.presentation, f);
  int r = f.fold;
  if (r < 3) throw input_error("missing or invalid --fold (need at least 3)");
  ProjectiveComplex C =
      resolve_simple(A, v, need(f.max_hdeg, "--max-hdeg"), f.max_weight);
  EndomorphismDga E = end_dga(C);
  DgaView view = view_of(E);
  CohomologyTable H = cohomology(E.cx);
  Json rows = Json::array();
  for (const auto& [k, reps] : H.reps) {
    if (!H.is_certified(k) || k == BlockKey{0, 0}) continue;
    for (Eigen::Index i = 0; i < reps.cols(); ++i) {
      Json row;
      row["deg"] = k.deg;
      row["weight"] = k.w;
      row["index"] = (int)i;
      try {
        std::vector<std::pair<BlockKey, Vec>> cls(r, {k, reps.col(i)});
        MasseyResult m = massey_product(view, cls);
        row["defined"] = m.defined;
        if (m.defined)
          row["nonzero"] = !in_span(m.indeterminacy, m.representative);
      } catch (const window_error&) {
        row["defined"] = "outside window";
      }
      rows.push_back(row);
    }
  }
  out.j["fold"] = r;
  out.j["products"] = rows;
  return out;
}

Output cmd_double_dual(const InputDocument& doc, const Flags& f) {
  Output out;
  int v = simple_vertex(doc.presentation, f);
  DcaCutoffs c{need(f.max_weight, "--max-weight"), need(f.max_hdeg, "--max-hdeg"),
               need(f.max_arity, "--max-arity")};
  DcaResult r = derived_contraction_algebra(doc.presentation, v, c);
  out.j["agrees"] = double_dual_check(r.mm.M, c.arity_max, c.w_max);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact invariants of quivers with relations"};
  std::string command, file;
  Flags f;
  app.add_option("command", command,
                 "check | algebra | resolve | ext | minimal-model | koszul-dual | "
                 "dq-cohomology | marked-relations | dca | ginzburg | jacobi | "
                 "massey | double-dual-check")
      ->required();
  app.add_option("file", file, "input .qvr file")->required();
  app.add_option("--max-weight", f.max_weight, "Adams weight cutoff");
  app.add_option("--max-hdeg", f.max_hdeg, "homological degree cutoff");
  app.add_option("--max-arity", f.max_arity, "operation arity cutoff");
  app.add_option("--simple", f.simple, "vertex of the simple module");
  app.add_option("--fold", f.fold, "Massey product fold");
  app.add_flag("--json", f.json, "machine-readable output");
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(file);
    if (!in.good()) throw input_error("cannot open '" + file + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    InputDocument doc = parse_document(ss.str());

    Output out;
    if (command == "check") out = cmd_check(doc);
    else if (command == "algebra") out = cmd_algebra(doc, f);
    else if (command == "resolve") out = cmd_resolve(doc, f);
    else if (command == "ext") out = cmd_ext(doc, f);
    else if (command == "minimal-model") out = cmd_minimal_model(doc, f);
    else if (command == "koszul-dual") out = cmd_dca(doc, f, false);
    else if (command == "dca") out = cmd_dca(doc, f, true);
    else if (command == "dq-cohomology") out = cmd_dq_cohomology(doc, f);
    else if (command == "marked-relations") out = cmd_marked_relations(doc, f);
    else if (command == "ginzburg") out = cmd_ginzburg(doc);
    else if (command == "jacobi") out = cmd_jacobi(doc, f);
    else if (command == "massey") out = cmd_massey(doc, f);
    else if (command == "double-dual-check") out = cmd_double_dual(doc, f);
    else throw input_error("unknown command '" + command + "'");

    if (f.json)
      std::cout << out.j.dump(2) << "\n";
    else {
      std::cout << render_text(out.j);
      if (!out.extra_text.empty()) std::cout << out.extra_text;
    }
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
