#include "helio2d/fft_util.hpp"

#include <unsupported/Eigen/FFT>

namespace helio2d {

namespace {
Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft_engine;
  return fft_engine;
}
}  // namespace

CVec fft(const CVec& in) {
  CVec out(in.size());
  engine().fwd(out.data(), in.data(), in.size());
  return out;
}

CVec ifft(const CVec& in) {
  CVec out(in.size());
  engine().inv(out.data(), in.data(), in.size());
  return out;
}

}  // namespace helio2d
