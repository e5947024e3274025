#pragma once

#include <complex>

#include <Eigen/Core>

namespace helio2d {

using CVec = Eigen::VectorXcd;

// Unnormalized forward DFT: out[b] = sum_j in[j] e^{-2pi i jb/N}.
CVec fft(const CVec& in);

// Inverse DFT including the 1/N factor, so ifft(fft(x)) == x.
CVec ifft(const CVec& in);

// Signed frequency of FFT bin idx for length n: idx < n/2 ? idx : idx - n.
inline int fft_freq(int idx, int n) { return idx < (n + 1) / 2 ? idx : idx - n; }

// Bin of signed frequency m (requires -n/2 <= m < n/2).
inline int fft_bin(int m, int n) { return m >= 0 ? m : m + n; }

}  // namespace helio2d
