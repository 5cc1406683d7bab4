#include "dca/quiver.hpp"

#include <algorithm>
#include <sstream>

namespace dca {

int WeightedQuiverPresentation::vertex_index(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return (int)i;
  return -1;
}

int WeightedQuiverPresentation::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return (int)i;
  return -1;
}

bool WeightedQuiverPresentation::is_marked(int v) const {
  return std::binary_search(marked.begin(), marked.end(), v);
}

int WeightedQuiverPresentation::word_weight(const Word& w) const {
  int s = 0;
  for (int a : w) s += arrows[a].weight;
  return s;
}

bool WeightedQuiverPresentation::word_composable(const Word& w) const {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (arrows[w[i]].tgt != arrows[w[i + 1]].src) return false;
  return true;
}

std::string WeightedQuiverPresentation::word_str(const Word& w) const {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += " ";
    s += arrows[w[i]].name;
  }
  return s;
}

void WeightedQuiverPresentation::validate() {
  if (vertices.empty()) throw input_error("no vertices");
  for (size_t i = 0; i < vertices.size(); ++i)
    for (size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] == vertices[j])
        throw input_error("duplicate vertex name '" + vertices[i] + "'");
  for (size_t i = 0; i < arrows.size(); ++i) {
    const Arrow& a = arrows[i];
    if (a.weight < 1)
      throw input_error("arrow '" + a.name + "' has weight " +
                        std::to_string(a.weight) + "; weights must be >= 1");
    if (vertex_index(a.name) >= 0)
      throw input_error("name '" + a.name + "' used for both a vertex and an arrow");
    for (size_t j = i + 1; j < arrows.size(); ++j)
      if (arrows[j].name == a.name)
        throw input_error("duplicate arrow name '" + a.name + "'");
  }
  for (Relation& r : relations) {
    if (r.terms.empty()) throw input_error("empty relation");
    for (PathTerm& t : r.terms) {
      if (t.word.empty()) throw input_error("empty path in relation");
      if (!word_composable(t.word))
        throw input_error("non-composable path '" + word_str(t.word) + "' in relation");
    }
    const Word& w0 = r.terms[0].word;
    r.src = word_src(w0);
    r.tgt = word_tgt(w0);
    r.weight = word_weight(w0);
    for (const PathTerm& t : r.terms) {
      if (word_src(t.word) != r.src || word_tgt(t.word) != r.tgt)
        throw input_error("relation summands '" + word_str(w0) + "' and '" +
                          word_str(t.word) + "' are not parallel");
      if (word_weight(t.word) != r.weight)
        throw input_error("relation mixes weights: '" + word_str(w0) + "' has weight " +
                          std::to_string(r.weight) + " but '" + word_str(t.word) +
                          "' has weight " + std::to_string(word_weight(t.word)));
    }
  }
  for (int v : marked)
    if (v < 0 || v >= (int)vertices.size()) throw input_error("bad marked vertex");
  std::sort(marked.begin(), marked.end());
  marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
}

Word canonical_rotation(const Word& w) {
  Word best = w;
  Word rot = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    // ':' is punctuation in arrow lines; split it off.
    std::string spaced;
    for (char c : raw) {
      if (c == ':') { spaced += " : "; }
      else spaced += c;
    }
    std::istringstream ls(spaced);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(line);
  }
  return out;
}

bool looks_like_rational(const std::string& t) {
  char c = t[0];
  return c >= '0' && c <= '9';
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw input_error("line " + std::to_string(line) + ": " + msg);
}

// Parses "<signed rational combos of arrow-name concatenations>" starting at
// tokens[pos].  Grammar per term: optional sign, optional rational, then one
// or more arrow names.
PathPoly parse_combo(const WeightedQuiverPresentation& p, const Line& line, size_t pos) {
  PathPoly poly;
  bool first = true;
  while (pos < line.tokens.size()) {
    Rat sign = 1;
    const std::string& t = line.tokens[pos];
    if (t == "+" || t == "-") {
      sign = (t == "-") ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail(line.number, "expected '+' or '-' before '" + t + "'");
    }
    first = false;
    if (pos >= line.tokens.size()) fail(line.number, "dangling sign");
    Rat coeff = sign;
    if (looks_like_rational(line.tokens[pos])) {
      coeff *= parse_rat(line.tokens[pos]);
      ++pos;
    }
    Word word;
    while (pos < line.tokens.size()) {
      const std::string& a = line.tokens[pos];
      if (a == "+" || a == "-") break;
      int idx = p.arrow_index(a);
      if (idx < 0) fail(line.number, "unknown arrow '" + a + "'");
      word.push_back(idx);
      ++pos;
    }
    if (word.empty()) fail(line.number, "term without arrows");
    poly.push_back({coeff, word});
  }
  if (poly.empty()) fail(line.number, "empty expression");
  return poly;
}

}  // namespace

InputDocument parse_document(const std::string& text) {
  InputDocument doc;
  WeightedQuiverPresentation& p = doc.presentation;
  std::vector<Line> lines = tokenize(text);

  // Vertices and arrows first so that later lines can resolve names in order.
  std::vector<const Line*> relation_lines, sp_lines, mark_lines;
  for (const Line& line : lines) {
    const std::string& kw = line.tokens[0];
    if (kw == "vertex") {
      if (line.tokens.size() != 2) fail(line.number, "expected 'vertex <name>'");
      p.vertices.push_back(line.tokens[1]);
    } else if (kw == "arrow") {
      // arrow <name> : <src> -> <tgt> weight <w>
      if (line.tokens.size() != 8 || line.tokens[2] != ":" || line.tokens[4] != "->" ||
          line.tokens[6] != "weight")
        fail(line.number, "expected 'arrow <name>: <src> -> <tgt> weight <n>'");
      Arrow a;
      a.name = line.tokens[1];
      a.src = p.vertex_index(line.tokens[3]);
      a.tgt = p.vertex_index(line.tokens[5]);
      if (a.src < 0) fail(line.number, "unknown vertex '" + line.tokens[3] + "'");
      if (a.tgt < 0) fail(line.number, "unknown vertex '" + line.tokens[5] + "'");
      try {
        a.weight = std::stoi(line.tokens[7]);
      } catch (...) {
        fail(line.number, "bad weight '" + line.tokens[7] + "'");
      }
      if (a.weight < 1) fail(line.number, "arrow weight must be a positive integer");
      p.arrows.push_back(a);
    } else if (kw == "relation") {
      relation_lines.push_back(&line);
    } else if (kw == "superpotential") {
      sp_lines.push_back(&line);
    } else if (kw == "mark") {
      mark_lines.push_back(&line);
    } else {
      fail(line.number, "unknown directive '" + kw + "'");
    }
  }
  for (const Line* line : relation_lines) {
    Relation r;
    r.terms = parse_combo(p, *line, 1);
    p.relations.push_back(r);
  }
  for (const Line* line : sp_lines) {
    PathPoly poly = parse_combo(p, *line, 1);
    for (const PathTerm& t : poly) {
      if (!p.word_composable(t.word) || p.word_tgt(t.word) != p.word_src(t.word))
        fail(line->number, "non-cyclic superpotential word '" + p.word_str(t.word) + "'");
      CyclicTerm ct{t.coeff, canonical_rotation(t.word)};
      bool merged = false;
      for (CyclicTerm& prev : doc.superpotential.terms)
        if (prev.word == ct.word) { prev.coeff += ct.coeff; merged = true; break; }
      if (!merged) doc.superpotential.terms.push_back(ct);
    }
    doc.has_superpotential = true;
  }
  for (const Line* line : mark_lines) {
    for (size_t i = 1; i < line->tokens.size(); ++i) {
      int v = p.vertex_index(line->tokens[i]);
      if (v < 0) fail(line->number, "unknown vertex '" + line->tokens[i] + "'");
      p.marked.push_back(v);
    }
  }
  p.validate();
  return doc;
}

namespace {
std::string combo_str(const WeightedQuiverPresentation& p, const PathPoly& poly) {
  std::string s;
  for (size_t i = 0; i < poly.size(); ++i) {
    Rat c = poly[i].coeff;
    if (c < 0) {
      s += i ? " - " : "- ";
      c = -c;
    } else if (i) {
      s += " + ";
    }
    if (c != 1) s += rat_str(c) + " ";
    s += p.word_str(poly[i].word);
  }
  return s;
}
}  // namespace

std::string print_document(const InputDocument& doc) {
  const WeightedQuiverPresentation& p = doc.presentation;
  std::string s;
  for (const std::string& v : p.vertices) s += "vertex " + v + "\n";
  for (const Arrow& a : p.arrows)
    s += "arrow " + a.name + ": " + p.vertices[a.src] + " -> " + p.vertices[a.tgt] +
         " weight " + std::to_string(a.weight) + "\n";
  for (const Relation& r : p.relations) s += "relation " + combo_str(p, r.terms) + "\n";
  if (doc.has_superpotential) {
    PathPoly poly;
    for (const CyclicTerm& t : doc.superpotential.terms) poly.push_back({t.coeff, t.word});
    s += "superpotential " + combo_str(p, poly) + "\n";
  }
  if (!p.marked.empty()) {
    s += "mark";
    for (int v : p.marked) s += " " + p.vertices[v];
    s += "\n";
  }
  return s;
}

}  // namespace dca
