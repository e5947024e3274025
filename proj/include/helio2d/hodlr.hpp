#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace helio2d {

using EntryFn = std::function<std::complex<double>(int, int)>;

struct HodlrOptions {
  int leaf_size = 128;
  double eps = 1e-10;
  // When > 0, matrix entries within this periodic index distance of the
  // diagonal carry local quadrature corrections: off-diagonal blocks are then
  // compressed as ACA(smooth part) + exact low-rank patch of the difference.
  int band_halfwidth = 0;
};

// Hierarchical off-diagonal low-rank factorization of a square matrix given
// by an entry callback. compress() builds the representation, factorize()
// prepares the multilevel Woodbury solve; solve()/solve_transpose() then run
// in O(N r log N) per right-hand side.
class HodlrMatrix {
 public:
  static HodlrMatrix compress(const EntryFn& entry, int n,
                              const HodlrOptions& opts = {});
  // entry_smooth must agree with entry at periodic index distance
  // > band_halfwidth; the near-band difference is captured exactly.
  static HodlrMatrix compress_split(const EntryFn& entry,
                                    const EntryFn& entry_smooth, int n,
                                    const HodlrOptions& opts);

  void factorize();
  bool factorized() const { return factorized_; }

  Eigen::MatrixXcd matvec(const Eigen::MatrixXcd& x) const;
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs) const;
  Eigen::MatrixXcd solve_transpose(const Eigen::MatrixXcd& rhs) const;

  int n() const { return n_; }
  int max_rank() const { return max_rank_; }
  bool dense_fallback() const { return dense_fallback_; }

 private:
  struct Node {
    int lo = 0, mid = 0, hi = 0;
    bool leaf = false;
    bool aca_full_rank = false;
    int child1 = -1, child2 = -1;
    Eigen::MatrixXcd dense;  // leaf
    // top-right block = u1 v2^T, bottom-left = u2 v1^T (plain transpose)
    Eigen::MatrixXcd u1, v2, u2, v1;
    Eigen::MatrixXcd ubar;  // D^{-1} blkdiag(U1,U2)
    Eigen::MatrixXcd wbar;  // D^{-T} [0 V1; V2 0]
    Eigen::PartialPivLU<Eigen::MatrixXcd> leaf_lu;
    Eigen::PartialPivLU<Eigen::MatrixXcd> cap_lu;
  };

  int build_tree(int lo, int hi);
  void compress_node(int idx, const EntryFn& entry, const EntryFn* smooth);
  void factorize_node(int idx);
  Eigen::MatrixXcd solve_node(int idx, const Eigen::MatrixXcd& b) const;
  Eigen::MatrixXcd solve_t_node(int idx, const Eigen::MatrixXcd& b) const;
  Eigen::MatrixXcd matvec_node(int idx, const Eigen::MatrixXcd& x) const;

  std::vector<Node> nodes_;
  std::vector<std::vector<int>> levels_;
  int root_ = -1;
  int n_ = 0;
  HodlrOptions opts_;
  bool factorized_ = false;
  int max_rank_ = 0;
  bool dense_fallback_ = false;
};

}  // namespace helio2d
