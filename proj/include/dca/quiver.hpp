#pragma once

#include <string>
#include <vector>

#include "dca/rational.hpp"

namespace dca {

struct Arrow {
  std::string name;
  int src = 0;
  int tgt = 0;
  int weight = 1;
};

// A word of arrow indices, composed left to right ("follow a, then b" = ab).
using Word = std::vector<int>;

struct PathTerm {
  Rat coeff;
  Word word;  // nonempty
};

using PathPoly = std::vector<PathTerm>;

struct Relation {
  PathPoly terms;
  int src = 0, tgt = 0, weight = 0;  // filled in by validate()
};

struct CyclicTerm {
  Rat coeff;
  Word word;  // a cycle; stored as its lexicographically least rotation
};

struct Superpotential {
  std::vector<CyclicTerm> terms;
};

struct WeightedQuiverPresentation {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  std::vector<int> marked;  // sorted vertex indices

  int vertex_index(const std::string& name) const;  // -1 if absent
  int arrow_index(const std::string& name) const;
  bool is_marked(int v) const;
  int word_src(const Word& w) const { return arrows[w.front()].src; }
  int word_tgt(const Word& w) const { return arrows[w.back()].tgt; }
  int word_weight(const Word& w) const;
  bool word_composable(const Word& w) const;
  std::string word_str(const Word& w) const;

  // Checks all structural invariants and fills in relation src/tgt/weight.
  // Throws input_error with a description on failure.
  void validate();
};

struct InputDocument {
  WeightedQuiverPresentation presentation;
  Superpotential superpotential;
  bool has_superpotential = false;
};

InputDocument parse_document(const std::string& text);
std::string print_document(const InputDocument& doc);

// Canonicalize a cyclic word to its lexicographically least rotation.
Word canonical_rotation(const Word& w);

}  // namespace dca
