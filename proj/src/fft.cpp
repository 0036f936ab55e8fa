#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <memory>
#include <mutex>

namespace ergolab::detail {

namespace {

// The FFTW planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer allocate(std::size_t n) {
  return Buffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

class Plan {
 public:
  Plan(std::size_t n, fftw_complex* in, fftw_complex* out, int sign) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE);
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

void load(fftw_complex* dst, std::size_t n, std::span<const Complex> src) {
  for (std::size_t i = 0; i < n; ++i) {
    const Complex v = i < src.size() ? src[i] : Complex{};
    dst[i][0] = v.real();
    dst[i][1] = v.imag();
  }
}

}  // namespace

std::vector<Complex> trig_grid(std::span<const Complex> coeffs, std::size_t grid_size) {
  Buffer in = allocate(grid_size);
  Buffer out = allocate(grid_size);
  Plan plan(grid_size, in.get(), out.get(), FFTW_BACKWARD);
  load(in.get(), grid_size, coeffs);
  plan.execute();
  std::vector<Complex> values(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) values[j] = {out[j][0], out[j][1]};
  return values;
}

std::vector<Complex> correlate(std::span<const Complex> b, std::span<const Complex> c, std::size_t out_len) {
  const std::size_t lb = b.size();
  const std::size_t lc = out_len + lb - 1;
  const std::size_t size = std::bit_ceil(lb + lc - 1);

  std::vector<Complex> reversed(b.rbegin(), b.rend());
  Buffer fb = allocate(size);
  Buffer fc = allocate(size);
  Buffer tb = allocate(size);
  Buffer tc = allocate(size);
  Plan forward_b(size, fb.get(), tb.get(), FFTW_FORWARD);
  Plan forward_c(size, fc.get(), tc.get(), FFTW_FORWARD);
  Plan backward(size, tb.get(), fb.get(), FFTW_BACKWARD);

  load(fb.get(), size, reversed);
  load(fc.get(), size, c.first(lc));
  forward_b.execute();
  forward_c.execute();
  for (std::size_t i = 0; i < size; ++i) {
    const Complex p = Complex{tb[i][0], tb[i][1]} * Complex{tc[i][0], tc[i][1]};
    tb[i][0] = p.real();
    tb[i][1] = p.imag();
  }
  backward.execute();

  const double scale = 1.0 / static_cast<double>(size);
  std::vector<Complex> out(out_len);
  for (std::size_t n = 0; n < out_len; ++n) {
    out[n] = Complex{fb[n + lb - 1][0], fb[n + lb - 1][1]} * scale;
  }
  return out;
}

}  // namespace ergolab::detail
