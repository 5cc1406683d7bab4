#pragma once

#include <map>
#include <string>
#include <vector>

#include "dca/linalg.hpp"
#include "dca/path_algebra.hpp"

namespace dca {

// (cohomological degree, Adams weight)
struct BlockKey {
  int deg = 0;
  int w = 0;
  auto operator<=>(const BlockKey&) const = default;
};

// A complex split into bigraded blocks with differential of bidegree (+1, 0).
struct BlockComplex {
  std::map<BlockKey, int> dims;
  std::map<BlockKey, std::vector<std::string>> labels;
  std::map<BlockKey, Mat> d;  // matrix (deg, w) -> (deg+1, w)
  // Blocks whose basis may be missing elements because of a cutoff; their
  // neighbours' cohomology is not certified.
  std::map<BlockKey, bool> incomplete;

  int dim(BlockKey k) const {
    auto it = dims.find(k);
    return it == dims.end() ? 0 : it->second;
  }
  bool is_complete(BlockKey k) const {
    auto it = incomplete.find(k);
    return it == incomplete.end() || !it->second;
  }
  Mat d_from(BlockKey k) const;  // dim(next) x dim(k), zero-filled if absent
  void check_d_squared(const std::string& what) const;  // throws internal_error
};

struct CohomologyTable {
  std::map<BlockKey, int> dims;
  std::map<BlockKey, Mat> reps;  // columns are chosen cocycle representatives
  std::map<BlockKey, bool> certified;
  int dim_degree(int deg) const;  // summed over weights (certified blocks only)
  bool is_certified(BlockKey k) const {
    auto it = certified.find(k);
    return it != certified.end() && it->second;
  }
};

CohomologyTable cohomology(const BlockComplex& X);

// P_v(shift): the projective e_v A with its generator placed in weight `shift`.
struct Summand {
  int vertex = 0;
  int shift = 0;
};

using AlgMat = std::vector<std::vector<AlgebraElement>>;  // [row][col]

// Complex of projectives in cohomological degrees 0, -1, ..., -(terms-1);
// terms[n] sits in degree -n and diffs[n] maps terms[n] -> terms[n-1] by
// left multiplication (entry (i,j) lies in e_{v_i} A e_{v_j}).
struct ProjectiveComplex {
  AlgebraPtr A;
  int simple_vertex = -1;  // set by resolve_simple
  std::vector<std::vector<Summand>> terms;
  std::vector<AlgMat> diffs;  // diffs[0] unused
  int cert_weight = 0;        // kernels/generators complete for weights <= this
  bool finished = false;      // resolution terminated inside the window
};

bool verify_complex(const ProjectiveComplex& C);

ProjectiveComplex resolve_simple(AlgebraPtr A, int v, int hdeg_max, int w_max);

// Coordinates of terms[n] at (target vertex t, module weight w): one column
// per pair (summand j, basis monomial of block(v_j, t, w - shift_j)).
std::vector<std::pair<int, int>> term_coords(const ProjectiveComplex& C, int n, int t,
                                             int w);
// Matrix of diffs[n] on those coordinates (rows indexed by terms[n-1]).
Mat diff_matrix(const ProjectiveComplex& C, int n, int t, int w);

}  // namespace dca
