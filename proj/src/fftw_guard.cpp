#include "fftw_guard.hpp"

namespace wienerkit::detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

Dft::Dft(std::size_t n, int sign) : in_(n), out_(n) {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in_.data()),
                           reinterpret_cast<fftw_complex*>(out_.data()), sign, FFTW_ESTIMATE);
}

Dft::~Dft() {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  fftw_destroy_plan(plan_);
}

}  // namespace wienerkit::detail
