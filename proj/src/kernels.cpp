#include "liouville/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>

#include "kernels_lanes.hpp"
#include "liouville/constants.hpp"

namespace liouville::kernels {

FamilyParams make_family_params(int n, double c_n, double beta_n, double lambda) {
  FamilyParams p;
  p.n = n;
  p.m = static_cast<double>(n) / (n - 1);
  p.a = std::pow(lambda, p.m);
  p.log_peak = std::log(c_n) + n * std::log(lambda);
  p.peak = c_n * powi(lambda, n);
  p.beta = beta_n;
  return p;
}

namespace {

struct Registry {
  std::vector<const Ops*> lanes;
  const Ops* active = nullptr;

  Registry() {
    lanes.push_back(&scalar_ops());
#ifdef LIOUVILLE_HAVE_SIMD_LANE
    lanes.push_back(simd128_lane());
#endif
#ifdef LIOUVILLE_HAVE_AVX2_LANE
    if (__builtin_cpu_supports("avx2")) lanes.push_back(avx2_lane());
#endif
    active = lanes.back();
    if (const char* env = std::getenv("LIOUVILLE_BACKEND")) select(env);
  }

  bool select(std::string_view name) {
    for (const Ops* lane : lanes) {
      if (name == lane->name) {
        active = lane;
        return true;
      }
    }
    return false;
  }
};

Registry& registry() {
  static Registry reg;
  return reg;
}

std::mutex reg_mutex;

double pairwise_sum_impl(const double* v, std::size_t k) {
  if (k <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += v[i];
    return s;
  }
  const std::size_t half = k / 2;
  return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, k - half);
}

double pairwise_dot_impl(const double* w, const double* f, std::size_t k) {
  if (k <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += w[i] * f[i];
    return s;
  }
  const std::size_t half = k / 2;
  return pairwise_dot_impl(w, f, half) + pairwise_dot_impl(w + half, f + half, k - half);
}

}  // namespace

const Ops& active_ops() {
  std::lock_guard<std::mutex> lock(reg_mutex);
  return *registry().active;
}

bool set_backend(std::string_view name) {
  std::lock_guard<std::mutex> lock(reg_mutex);
  return registry().select(name);
}

std::string_view backend_name() { return active_ops().name; }

std::vector<std::string_view> available_backends() {
  std::lock_guard<std::mutex> lock(reg_mutex);
  std::vector<std::string_view> names;
  for (const Ops* lane : registry().lanes) names.emplace_back(lane->name);
  return names;
}

double pairwise_sum(std::span<const double> v) { return pairwise_sum_impl(v.data(), v.size()); }

double pairwise_dot(std::span<const double> w, std::span<const double> f) {
  return pairwise_dot_impl(w.data(), f.data(), w.size());
}

}  // namespace liouville::kernels
