#pragma once

#include <string>
#include <vector>

#include "dca/ainfty.hpp"
#include "dca/complex.hpp"

namespace dca {

// Generator of a free graded dga over a vertex set (loops when src == tgt).
struct FreeGen {
  std::string name;
  int deg = 0, wt = 0;
  int src = 0, tgt = 0;
};

struct FreeTerm {
  Rat coeff;
  std::vector<int> word;  // nonempty list of generator indices
};
using FreePoly = std::vector<FreeTerm>;

// A word in the generators; the start vertex disambiguates the empty word.
struct FreeWord {
  int src = 0;
  std::vector<int> word;
  auto operator<=>(const FreeWord&) const = default;
};

// Finitely generated free dga with a derivation differential given on the
// generators.  The differential raises cohomological degree by one and
// preserves the Adams weight; d^2 = 0 is checked exactly, no truncation is
// involved.
struct FreeDgaPresentation {
  std::vector<std::string> vertices;
  std::vector<FreeGen> gens;
  std::map<int, FreePoly> d;

  int gen_index(const std::string& name) const;
  bool word_composable(const std::vector<int>& w) const;
  int word_deg(const std::vector<int>& w) const;
  int word_wt(const std::vector<int>& w) const;
  std::string word_str(const FreeWord& w) const;
  void validate() const;            // throws input_error
  FreePoly diff_word(const std::vector<int>& w) const;
  void check_d_squared() const;     // throws internal_error
};

// Weight truncation of a free dga whose generator weights are all strictly
// negative (window [w_lo, 0]) or all strictly positive (window [0, w_hi]):
// the words inside the window form a finite basis.
struct FreeDgaTruncation {
  FreeDgaPresentation pres;
  int w_lo = 0, w_hi = 0;
  BlockComplex cx;
  std::map<BlockKey, std::vector<FreeWord>> basis;
  std::map<BlockKey, std::map<FreeWord, int>> index;

  Vec mul_basis(BlockKey ka, int a, BlockKey kb, int b) const;  // concatenation
  Vec unit() const;
  BlockKey unit_key() const { return BlockKey{0, 0}; }
  // The view borrows this truncation; keep it alive while the view is used.
  DgaView view() const;
};

FreeDgaTruncation truncate_free_dga(const FreeDgaPresentation& F, int w_lo, int w_hi);

}  // namespace dca
