#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

namespace wienerkit::detail {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& fftw_planner_mutex();

// In-place-style owner of one complex DFT plan of fixed size.
class Dft {
 public:
  Dft(std::size_t n, int sign);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  std::vector<std::complex<double>>& input() noexcept { return in_; }
  const std::vector<std::complex<double>>& output() const noexcept { return out_; }
  void execute() noexcept { fftw_execute(plan_); }

 private:
  std::vector<std::complex<double>> in_, out_;
  fftw_plan plan_;
};

}  // namespace wienerkit::detail
