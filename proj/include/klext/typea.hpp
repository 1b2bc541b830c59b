#pragma once

// Penultimate-cell combinatorics in W = S_n (type A_{n-1}, generators
// s_1..s_{n-1}) and the first-extension predictor built from bigrassmannians.
//
// Shifts in PredictionRecord are relative to Delta_w: the graded occurrence
// L<-m'> of Delta_e contributes ext^1 at shift m = l(w) - m', and the
// expected shift for the pair (w_{i,j}, w) is 2 - (l(w_{i,j}) - l(w)).

#include "klext/workspace.hpp"

#include <vector>

namespace klext {

struct PenultimateIndex {
  int n = 0;
  int i = 0;
  int j = 0;
  std::uint32_t w_hat = 0; // s_i s_{i-+1} ... s_j
  std::uint32_t w_pen = 0; // w_hat(i, n-j) * w0
  int q = 0;
};

class TypeAError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// n for W = S_n; throws unless the system is of type A.
int symmetric_degree(const CoxeterSystem& sys);

int q_index(int n, int i, int j);
PenultimateIndex penultimate_element(const CoxeterSystem& sys, int i, int j);

/// Bigrassmannians with left descent s_i and right descent s_j, by length.
std::vector<std::uint32_t> bigrassmannian_chain(const CoxeterSystem& sys, int i, int j);

/// Graded-occurrence degree m' of L_{w_{i,j}} in Delta_e matched with u.
int phi(const CoxeterSystem& sys, int i, int j, std::uint32_t u);

/// Bruhat-maximal bigrassmannians below w.
std::vector<std::uint32_t> bm_set(const CoxeterSystem& sys, std::uint32_t w);

struct PredictionRecord {
  std::uint32_t w = 0;
  std::uint32_t u = 0;  // witness in BM_w
  int i = 0;
  int j = 0;
  int chain_position = 0;   // 1-based
  int degree = 0;           // m'
  int shift = 0;            // m, relative to Delta_w
  int expected_shift = 0;   // 2 - (l(w_{i,j}) - l(w))
  bool expected = false;
  std::uint32_t source = 0; // w_{i,j}
  /// |r^{(d-2)}_{w_{i,j}, w}|, the dimension of the expected part of ext^1.
  Integer expected_part_dim = 0;
};

std::vector<PredictionRecord> predict_ext1(const Workspace& ws, std::uint32_t w);

} // namespace klext
