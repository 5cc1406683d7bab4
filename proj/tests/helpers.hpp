#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "dca/quiver.hpp"

inline std::string read_corpus(const std::string& name) {
  std::ifstream in(std::string(DCA_CORPUS_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline dca::InputDocument load(const std::string& name) {
  return dca::parse_document(read_corpus(name));
}

inline dca::Word wordof(const dca::WeightedQuiverPresentation& p, const std::string& names) {
  dca::Word w;
  std::istringstream ss(names);
  std::string tok;
  while (ss >> tok) {
    int idx = p.arrow_index(tok);
    REQUIRE(idx >= 0);
    w.push_back(idx);
  }
  return w;
}
