#include "helio2d/hodlr.hpp"

#include <cmath>
#include <stdexcept>

#include "helio2d/threads.hpp"

namespace helio2d {

namespace {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct LowRank {
  Mat u, v;  // block ~ u v^T
  bool full_rank = false;
};

// Partial-pivot ACA on the block rows [rlo,rhi) x cols [clo,chi).
LowRank aca_block(const EntryFn& entry, int rlo, int rhi, int clo, int chi,
                  double eps) {
  int m = rhi - rlo, n = chi - clo;
  int rmax = std::min(m, n);
  std::vector<Vec> us, vs;
  std::vector<bool> row_used(m, false), col_used(n, false);

  auto residual_row = [&](int i) {
    Vec r(n);
    for (int j = 0; j < n; ++j) r[j] = entry(rlo + i, clo + j);
    for (size_t k = 0; k < us.size(); ++k) r -= us[k][i] * vs[k];
    return r;
  };
  auto residual_col = [&](int j) {
    Vec c(m);
    for (int i = 0; i < m; ++i) c[i] = entry(rlo + i, clo + j);
    for (size_t k = 0; k < us.size(); ++k) c -= vs[k][j] * us[k];
    return c;
  };

  double fnorm2 = 0.0;
  int small_streak = 0;
  int next_row = 0;
  // find a usable starting row
  Vec row;
  int i_piv = -1;
  for (int scan = 0; scan < m; ++scan) {
    row = residual_row(scan);
    double mx = row.cwiseAbs().maxCoeff();
    if (mx > 1e-305) {
      i_piv = scan;
      break;
    }
    row_used[scan] = true;
  }
  if (i_piv < 0) return {Mat(m, 0), Mat(n, 0), false};

  while (static_cast<int>(us.size()) < rmax) {
    row_used[i_piv] = true;
    int j_piv = -1;
    double mx = -1.0;
    for (int j = 0; j < n; ++j) {
      if (col_used[j]) continue;
      double a = std::abs(row[j]);
      if (a > mx) {
        mx = a;
        j_piv = j;
      }
    }
    if (j_piv < 0 || mx <= 1e-305) break;
    col_used[j_piv] = true;
    Vec col = residual_col(j_piv);
    Vec u = col / row[j_piv];
    Vec v = row;
    double uu = u.norm(), vv = v.norm();
    double cross = 0.0;
    for (size_t k = 0; k < us.size(); ++k)
      cross += std::abs(us[k].dot(u.conjugate())) * std::abs(vs[k].dot(v.conjugate()));
    fnorm2 += uu * uu * vv * vv + 2.0 * cross;
    us.push_back(u);
    vs.push_back(v);
    if (uu * vv <= eps * std::sqrt(std::max(fnorm2, 1e-300))) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
    // next pivot row: largest entry of u among unused rows
    i_piv = -1;
    mx = -1.0;
    for (int i = 0; i < m; ++i) {
      if (row_used[i]) continue;
      double a = std::abs(u[i]);
      if (a > mx) {
        mx = a;
        i_piv = i;
      }
    }
    if (i_piv < 0) break;
    row = residual_row(i_piv);
    if (row.cwiseAbs().maxCoeff() <= 1e-305) break;
  }

  int r = static_cast<int>(us.size());
  LowRank out;
  out.u.resize(m, r);
  out.v.resize(n, r);
  for (int k = 0; k < r; ++k) {
    out.u.col(k) = us[k];
    out.v.col(k) = vs[k];
  }
  out.full_rank = (r == rmax);
  return out;
}

// QR + SVD recompression of u v^T to tolerance eps (relative to sigma_1).
void recompress(Mat& u, Mat& v, double eps) {
  int r = static_cast<int>(u.cols());
  if (r == 0) return;
  int m = static_cast<int>(u.rows());
  int n = static_cast<int>(v.rows());
  if (r >= std::min(m, n)) {
    // small/overfull block: exact SVD of the materialized product
    Mat block = u * v.transpose();
    Eigen::JacobiSVD<Mat> svd(block, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sig = svd.singularValues();
    int keep = 0;
    for (int i = 0; i < sig.size(); ++i)
      if (sig[i] > eps * sig[0] && sig[i] > 1e-300) ++keep;
    u = svd.matrixU().leftCols(keep) * sig.head(keep).asDiagonal();
    v = svd.matrixV().leftCols(keep).conjugate();
    return;
  }
  Eigen::HouseholderQR<Mat> qru(u), qrv(v);
  Mat ru = qru.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  Mat rv = qrv.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  Mat mid = ru * rv.transpose();
  Eigen::JacobiSVD<Mat> svd(mid, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sig = svd.singularValues();
  int keep = 0;
  for (int i = 0; i < sig.size(); ++i)
    if (sig[i] > eps * sig[0] && sig[i] > 1e-300) ++keep;
  Mat qu = qru.householderQ() * Mat::Identity(m, r);
  Mat qv = qrv.householderQ() * Mat::Identity(n, r);
  u = qu * svd.matrixU().leftCols(keep) * sig.head(keep).asDiagonal();
  v = qv * svd.matrixV().leftCols(keep).conjugate();
}

// rows of [lo,hi) within periodic distance `band` of the set [olo,ohi)
std::vector<int> near_rows(int lo, int hi, int olo, int ohi, int band, int N) {
  std::vector<int> out;
  for (int i = lo; i < hi; ++i) {
    int d1 = std::min(std::abs(i - olo), N - std::abs(i - olo));
    int d2 = std::min(std::abs(i - (ohi - 1)), N - std::abs(i - (ohi - 1)));
    // distance to the interval endpoints bounds distance to the interval
    int d = std::min(d1, d2);
    if (i >= olo && i < ohi) d = 0;
    if (d <= band) out.push_back(i);
  }
  return out;
}

}  // namespace

int HodlrMatrix::build_tree(int lo, int hi) {
  Node nd;
  nd.lo = lo;
  nd.hi = hi;
  if (hi - lo <= opts_.leaf_size) {
    nd.leaf = true;
    nd.mid = hi;
    nodes_.push_back(nd);
    return static_cast<int>(nodes_.size()) - 1;
  }
  nd.mid = lo + (hi - lo) / 2;
  int idx = static_cast<int>(nodes_.size());
  nodes_.push_back(nd);
  int c1 = build_tree(lo, nodes_[idx].mid);
  int c2 = build_tree(nodes_[idx].mid, hi);
  nodes_[idx].child1 = c1;
  nodes_[idx].child2 = c2;
  return idx;
}

void HodlrMatrix::compress_node(int idx, const EntryFn& entry,
                                const EntryFn* smooth) {
  Node& nd = nodes_[idx];
  if (nd.leaf) {
    int m = nd.hi - nd.lo;
    nd.dense.resize(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) nd.dense(i, j) = entry(nd.lo + i, nd.lo + j);
    return;
  }
  const EntryFn& base = smooth ? *smooth : entry;
  struct Block {
    int rlo, rhi, clo, chi;
    Mat *u, *v;
  } blocks[2] = {{nd.lo, nd.mid, nd.mid, nd.hi, &nd.u1, &nd.v2},
                 {nd.mid, nd.hi, nd.lo, nd.mid, &nd.u2, &nd.v1}};
  for (const Block& blk : blocks) {
    LowRank lr = aca_block(base, blk.rlo, blk.rhi, blk.clo, blk.chi, opts_.eps);
    if (lr.full_rank) nd.aca_full_rank = true;
    Mat u = lr.u, v = lr.v;
    if (smooth && opts_.band_halfwidth > 0) {
      int band = opts_.band_halfwidth;
      std::vector<int> rp = near_rows(blk.rlo, blk.rhi, blk.clo, blk.chi, band, n_);
      std::vector<int> cp = near_rows(blk.clo, blk.chi, blk.rlo, blk.rhi, band, n_);
      if (!rp.empty() && !cp.empty()) {
        Mat patch(rp.size(), cp.size());
        for (size_t a = 0; a < rp.size(); ++a)
          for (size_t b = 0; b < cp.size(); ++b) {
            int i = rp[a], j = cp[b];
            int d = std::abs(i - j);
            d = std::min(d, n_ - d);
            patch(a, b) = d <= band ? entry(i, j) - base(i, j) : Complex(0, 0);
          }
        Eigen::JacobiSVD<Mat> svd(patch,
                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sig = svd.singularValues();
        int keep = 0;
        for (int i = 0; i < sig.size(); ++i)
          if (sig[i] > 1e-15 * sig[0] && sig[i] > 1e-300) ++keep;
        if (keep > 0) {
          Mat up = Mat::Zero(blk.rhi - blk.rlo, keep);
          Mat vp = Mat::Zero(blk.chi - blk.clo, keep);
          Mat usv = svd.matrixU().leftCols(keep) *
                    sig.head(keep).asDiagonal();
          Mat vsv = svd.matrixV().leftCols(keep).conjugate();
          for (size_t a = 0; a < rp.size(); ++a)
            up.row(rp[a] - blk.rlo) = usv.row(a);
          for (size_t b = 0; b < cp.size(); ++b)
            vp.row(cp[b] - blk.clo) = vsv.row(b);
          Mat u2(u.rows(), u.cols() + keep), v2(v.rows(), v.cols() + keep);
          u2 << u, up;
          v2 << v, vp;
          u = std::move(u2);
          v = std::move(v2);
        }
      }
    }
    recompress(u, v, opts_.eps);
    *blk.u = std::move(u);
    *blk.v = std::move(v);
  }
}

HodlrMatrix HodlrMatrix::compress(const EntryFn& entry, int n,
                                  const HodlrOptions& opts) {
  return compress_split(entry, entry, n,
                        HodlrOptions{opts.leaf_size, opts.eps, 0});
}

HodlrMatrix HodlrMatrix::compress_split(const EntryFn& entry,
                                        const EntryFn& entry_smooth, int n,
                                        const HodlrOptions& opts) {
  if (n < 1) throw std::invalid_argument("HodlrMatrix: empty matrix");
  if (!(opts.eps >= 1e-14 && opts.eps <= 1e-4))
    throw std::invalid_argument("HodlrMatrix: eps must lie in [1e-14, 1e-4]");
  HodlrMatrix h;
  h.n_ = n;
  h.opts_ = opts;
  h.root_ = h.build_tree(0, n);
  // group nodes by depth for parallel compression
  std::vector<int> depth(h.nodes_.size(), 0);
  for (size_t i = 0; i < h.nodes_.size(); ++i) {
    const Node& nd = h.nodes_[i];
    if (!nd.leaf) {
      depth[nd.child1] = depth[i] + 1;
      depth[nd.child2] = depth[i] + 1;
    }
  }
  int maxd = 0;
  for (int d : depth) maxd = std::max(maxd, d);
  h.levels_.assign(maxd + 1, {});
  for (size_t i = 0; i < h.nodes_.size(); ++i)
    h.levels_[depth[i]].push_back(static_cast<int>(i));

  bool split = opts.band_halfwidth > 0;
  std::vector<int> order;
  for (const auto& lv : h.levels_)
    for (int idx : lv) order.push_back(idx);
  parallel_for(static_cast<std::int64_t>(order.size()),
               [&](std::int64_t lo, std::int64_t hi) {
                 for (std::int64_t q = lo; q < hi; ++q)
                   h.compress_node(order[q], entry, split ? &entry_smooth : nullptr);
               });
  for (const Node& nd : h.nodes_) {
    if (nd.leaf) continue;
    h.max_rank_ = std::max({h.max_rank_, static_cast<int>(nd.u1.cols()),
                            static_cast<int>(nd.u2.cols())});
    if (nd.aca_full_rank) h.dense_fallback_ = true;
  }
  return h;
}

void HodlrMatrix::factorize_node(int idx) {
  Node& nd = nodes_[idx];
  if (nd.leaf) {
    nd.leaf_lu.compute(nd.dense);
    return;
  }
  factorize_node(nd.child1);
  factorize_node(nd.child2);
  int ra = static_cast<int>(nd.u1.cols());
  int rb = static_cast<int>(nd.u2.cols());
  int m1 = nd.mid - nd.lo, m2 = nd.hi - nd.mid;
  nd.ubar = Mat::Zero(m1 + m2, ra + rb);
  if (ra > 0) nd.ubar.topLeftCorner(m1, ra) = solve_node(nd.child1, nd.u1);
  if (rb > 0) nd.ubar.bottomRightCorner(m2, rb) = solve_node(nd.child2, nd.u2);
  nd.wbar = Mat::Zero(m1 + m2, ra + rb);
  if (ra > 0) nd.wbar.bottomLeftCorner(m2, ra) = solve_t_node(nd.child2, nd.v2);
  if (rb > 0) nd.wbar.topRightCorner(m1, rb) = solve_t_node(nd.child1, nd.v1);
  Mat cap = Mat::Identity(ra + rb, ra + rb);
  if (ra > 0 && rb > 0) {
    cap.topRightCorner(ra, rb) =
        nd.v2.transpose() * nd.ubar.bottomRightCorner(m2, rb);
    cap.bottomLeftCorner(rb, ra) =
        nd.v1.transpose() * nd.ubar.topLeftCorner(m1, ra);
  }
  nd.cap_lu.compute(cap);
}

void HodlrMatrix::factorize() {
  if (root_ < 0) throw std::logic_error("HodlrMatrix: not compressed");
  factorize_node(root_);
  factorized_ = true;
}

Eigen::MatrixXcd HodlrMatrix::solve_node(int idx, const Mat& b) const {
  const Node& nd = nodes_[idx];
  if (nd.leaf) return nd.leaf_lu.solve(b);
  int m1 = nd.mid - nd.lo, m2 = nd.hi - nd.mid;
  int ra = static_cast<int>(nd.u1.cols());
  int rb = static_cast<int>(nd.u2.cols());
  Mat z(b.rows(), b.cols());
  z.topRows(m1) = solve_node(nd.child1, b.topRows(m1));
  z.bottomRows(m2) = solve_node(nd.child2, b.bottomRows(m2));
  if (ra + rb == 0) return z;
  Mat t(ra + rb, b.cols());
  if (ra > 0) t.topRows(ra) = nd.v2.transpose() * z.bottomRows(m2);
  if (rb > 0) t.bottomRows(rb) = nd.v1.transpose() * z.topRows(m1);
  Mat y = nd.cap_lu.solve(t);
  return z - nd.ubar * y;
}

Eigen::MatrixXcd HodlrMatrix::solve_t_node(int idx, const Mat& b) const {
  const Node& nd = nodes_[idx];
  if (nd.leaf) return nd.leaf_lu.transpose().solve(b);
  int m1 = nd.mid - nd.lo, m2 = nd.hi - nd.mid;
  int ra = static_cast<int>(nd.u1.cols());
  int rb = static_cast<int>(nd.u2.cols());
  Mat z(b.rows(), b.cols());
  z.topRows(m1) = solve_t_node(nd.child1, b.topRows(m1));
  z.bottomRows(m2) = solve_t_node(nd.child2, b.bottomRows(m2));
  if (ra + rb == 0) return z;
  Mat t(ra + rb, b.cols());
  if (ra > 0) t.topRows(ra) = nd.u1.transpose() * z.topRows(m1);
  if (rb > 0) t.bottomRows(rb) = nd.u2.transpose() * z.bottomRows(m2);
  Mat y = nd.cap_lu.transpose().solve(t);
  return z - nd.wbar * y;
}

Eigen::MatrixXcd HodlrMatrix::matvec_node(int idx, const Mat& x) const {
  const Node& nd = nodes_[idx];
  if (nd.leaf) return nd.dense * x;
  int m1 = nd.mid - nd.lo, m2 = nd.hi - nd.mid;
  Mat out(x.rows(), x.cols());
  out.topRows(m1) = matvec_node(nd.child1, x.topRows(m1));
  out.bottomRows(m2) = matvec_node(nd.child2, x.bottomRows(m2));
  if (nd.u1.cols() > 0)
    out.topRows(m1) += nd.u1 * (nd.v2.transpose() * x.bottomRows(m2));
  if (nd.u2.cols() > 0)
    out.bottomRows(m2) += nd.u2 * (nd.v1.transpose() * x.topRows(m1));
  return out;
}

Eigen::MatrixXcd HodlrMatrix::matvec(const Mat& x) const {
  if (x.rows() != n_) throw std::invalid_argument("HodlrMatrix::matvec: size");
  return matvec_node(root_, x);
}

Eigen::MatrixXcd HodlrMatrix::solve(const Mat& rhs) const {
  if (!factorized_) throw std::logic_error("HodlrMatrix::solve: factorize first");
  if (rhs.rows() != n_) throw std::invalid_argument("HodlrMatrix::solve: size");
  return solve_node(root_, rhs);
}

Eigen::MatrixXcd HodlrMatrix::solve_transpose(const Mat& rhs) const {
  if (!factorized_)
    throw std::logic_error("HodlrMatrix::solve_transpose: factorize first");
  if (rhs.rows() != n_)
    throw std::invalid_argument("HodlrMatrix::solve_transpose: size");
  return solve_t_node(root_, rhs);
}

}  // namespace helio2d
