#include "dca/report.hpp"

#include <sstream>

namespace dca {

Json cohomology_json(const CohomologyTable& H) {
  Json out = Json::array();
  for (const auto& [k, n] : H.dims) {
    Json row;
    row["deg"] = k.deg;
    row["weight"] = k.w;
    row["dim"] = n;
    row["certified"] = H.is_certified(k);
    out.push_back(row);
  }
  return out;
}

Json block_dims_json(const BlockComplex& cx) {
  Json out = Json::array();
  for (const auto& [k, n] : cx.dims) {
    Json row;
    row["deg"] = k.deg;
    row["weight"] = k.w;
    row["dim"] = n;
    row["complete"] = cx.is_complete(k);
    out.push_back(row);
  }
  return out;
}

Json presentation_json(const FreeDgaPresentation& F) {
  Json out;
  out["vertices"] = F.vertices;
  Json gens = Json::array();
  for (const FreeGen& g : F.gens) {
    Json row;
    row["name"] = g.name;
    row["deg"] = g.deg;
    row["weight"] = g.wt;
    row["src"] = F.vertices[g.src];
    row["tgt"] = F.vertices[g.tgt];
    gens.push_back(row);
  }
  out["generators"] = gens;
  Json diff = Json::object();
  for (const FreeGen& g : F.gens) {
    auto it = F.d.find(F.gen_index(g.name));
    if (it == F.d.end() || it->second.empty()) {
      diff[g.name] = "0";
      continue;
    }
    Json terms = Json::array();
    for (const FreeTerm& t : it->second) {
      Json term;
      term["coeff"] = rat_str(t.coeff);
      Json word = Json::array();
      for (int i : t.word) word.push_back(F.gens[i].name);
      term["word"] = word;
      terms.push_back(term);
    }
    diff[g.name] = terms;
  }
  out["differential"] = diff;
  return out;
}

Json algebra_dims_json(const TruncatedAlgebra& A) {
  Json out = Json::array();
  for (int w = 0; w <= A.w_max; ++w) {
    Json row;
    row["weight"] = w;
    row["dim"] = A.dim_weight(w);
    out.push_back(row);
  }
  return out;
}

std::string presentation_text(const FreeDgaPresentation& F) {
  std::ostringstream os;
  os << "generators:";
  for (const FreeGen& g : F.gens) {
    os << " " << g.name << " (deg " << g.deg << ", wt " << g.wt;
    if (F.vertices.size() > 1)
      os << ", " << F.vertices[g.src] << " -> " << F.vertices[g.tgt];
    os << ");";
  }
  os << "\n";
  for (const FreeGen& g : F.gens) {
    os << "d " << g.name << " = ";
    auto it = F.d.find(F.gen_index(g.name));
    if (it == F.d.end() || it->second.empty()) {
      os << "0\n";
      continue;
    }
    bool first = true;
    for (const FreeTerm& t : it->second) {
      Rat c = t.coeff;
      if (!first) os << (c > 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      first = false;
      Rat a = abs(c);
      if (a != 1) os << rat_str(a) << " ";
      bool fg = true;
      for (int i : t.word) {
        if (!fg) os << " ";
        fg = false;
        os << F.gens[i].name;
      }
    }
    os << "\n";
  }
  return os.str();
}

namespace {

std::string scalar_str(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool all_scalar(const Json& a) {
  for (const auto& v : a)
    if (v.is_structured()) return false;
  return true;
}

void render(const Json& j, const std::string& indent, std::ostringstream& os) {
  for (const auto& [k, v] : j.items()) {
    if (v.is_array() && all_scalar(v)) {
      os << indent << k << ":";
      for (const auto& e : v) os << " " << scalar_str(e);
      os << "\n";
    } else if (v.is_array()) {
      os << indent << k << ":\n";
      for (const auto& e : v) {
        bool simple = e.is_object();
        if (simple)
          for (const auto& [ek, ev] : e.items())
            if (ev.is_structured() && !(ev.is_array() && all_scalar(ev)))
              simple = false;
        if (simple) {
          os << indent << "  -";
          for (const auto& [ek, ev] : e.items()) {
            if (ev.is_array()) {
              os << " " << ek << "=";
              bool f = true;
              for (const auto& x : ev) {
                if (!f) os << ".";
                f = false;
                os << scalar_str(x);
              }
            } else
              os << " " << ek << "=" << scalar_str(ev);
          }
          os << "\n";
        } else {
          os << indent << "  -\n";
          render(e, indent + "    ", os);
        }
      }
    } else if (v.is_object()) {
      os << indent << k << ":\n";
      render(v, indent + "  ", os);
    } else {
      os << indent << k << ": " << scalar_str(v) << "\n";
    }
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream os;
  render(j, "", os);
  return os.str();
}

}  // namespace dca
