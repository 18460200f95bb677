#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mambo/errors.hpp"
#include "mambo/plane.hpp"

namespace mambo {

enum class SigmaKind {
  kBeta,       // sigma_t = sqrt(beta_t)
  kPosterior,  // sigma_t = sqrt((1 - alpha_bar_{t-1}) / (1 - alpha_bar_t) * beta_t)
};

// Precomputed beta/alpha/alpha_bar/sigma sequences. Index convention: t runs
// 1..T for beta/alpha/sigma; alpha_bar additionally defines alpha_bar(0) = 1.
// Immutable after construction; all accessors pure.
class NoiseSchedule {
 public:
  NoiseSchedule(std::vector<double> beta, SigmaKind kind) : beta_(std::move(beta)) {
    const int T = static_cast<int>(beta_.size());
    if (T < 1) throw ConfigError("schedule: T must be >= 1");
    for (int i = 0; i < T; ++i) {
      if (!(beta_[i] > 0.0 && beta_[i] < 1.0)) throw ConfigError("schedule: beta out of (0,1)");
      if (i > 0 && beta_[i] < beta_[i - 1]) throw ConfigError("schedule: beta must be non-decreasing");
    }
    alpha_.resize(T);
    alpha_bar_.resize(T + 1);
    sigma_.resize(T);
    alpha_bar_[0] = 1.0;
    for (int i = 0; i < T; ++i) {
      alpha_[i] = 1.0 - beta_[i];
      alpha_bar_[i + 1] = alpha_bar_[i] * alpha_[i];
    }
    for (int i = 0; i < T; ++i) {
      if (kind == SigmaKind::kBeta) {
        sigma_[i] = std::sqrt(beta_[i]);
      } else {
        sigma_[i] = std::sqrt((1.0 - alpha_bar_[i]) / (1.0 - alpha_bar_[i + 1]) * beta_[i]);
      }
    }
  }

  int T() const { return static_cast<int>(beta_.size()); }

  double beta(int t) const { return beta_[check_t(t) - 1]; }
  double alpha(int t) const { return alpha_[check_t(t) - 1]; }
  double sigma(int t) const { return sigma_[check_t(t) - 1]; }

  double alpha_bar(int t) const {
    if (t < 0 || t > T()) throw DataError("schedule: alpha_bar index out of [0,T]");
    return alpha_bar_[t];
  }

 private:
  int check_t(int t) const {
    if (t < 1 || t > T()) throw DataError("schedule: timestep out of [1,T]");
    return t;
  }

  std::vector<double> beta_, alpha_, alpha_bar_, sigma_;
};

// Linear beta ramp from beta_min at t=1 to beta_max at t=T.
inline NoiseSchedule build_linear_schedule(int T, double beta_min, double beta_max,
                                           SigmaKind kind = SigmaKind::kBeta) {
  if (T < 1) throw ConfigError("build_linear_schedule: T must be >= 1");
  if (!(beta_min > 0.0 && beta_min <= beta_max && beta_max < 1.0))
    throw ConfigError("build_linear_schedule: need 0 < beta_min <= beta_max < 1");
  std::vector<double> beta(T);
  for (int t = 1; t <= T; ++t) {
    beta[t - 1] = T == 1 ? beta_min
                         : beta_min + (beta_max - beta_min) * static_cast<double>(t - 1) /
                                          static_cast<double>(T - 1);
  }
  return NoiseSchedule(std::move(beta), kind);
}

// x_t = sqrt(alpha_bar_t) x0 + sqrt(1 - alpha_bar_t) eps. Accepts t = 0
// (alpha_bar = 1) so renoising a known region at the final step is exact.
inline Plane forward_noise(const Plane& x0, int t, const Plane& eps, const NoiseSchedule& sched) {
  require_same_shape(x0, eps, "forward_noise");
  const double ab = sched.alpha_bar(t);
  const float a = static_cast<float>(std::sqrt(ab));
  const float b = static_cast<float>(std::sqrt(1.0 - ab));
  Plane out(x0.rows, x0.cols);
  for (size_t i = 0; i < out.size(); ++i) out.v[i] = a * x0.v[i] + b * eps.v[i];
  return out;
}

// One reverse step of the ancestral sampler:
// x_{t-1} = (x_t - (1-alpha_t)/sqrt(1-alpha_bar_t) eps_hat) / sqrt(alpha_t) + sigma_t z.
// z must be all-zeros at t = 1.
inline Plane ddpm_step(const Plane& x_t, const Plane& eps_hat, int t, const Plane& z,
                       const NoiseSchedule& sched) {
  require_same_shape(x_t, eps_hat, "ddpm_step");
  require_same_shape(x_t, z, "ddpm_step");
  if (t == 1) {
    for (float zi : z.v)
      if (zi != 0.0f) throw DataError("ddpm_step: z must be zero at t=1");
  }
  const double inv_sqrt_alpha = 1.0 / std::sqrt(sched.alpha(t));
  const double coef = (1.0 - sched.alpha(t)) / std::sqrt(1.0 - sched.alpha_bar(t));
  const double sig = sched.sigma(t);
  Plane out(x_t.rows, x_t.cols);
  for (size_t i = 0; i < out.size(); ++i) {
    double mean = inv_sqrt_alpha * (static_cast<double>(x_t.v[i]) - coef * eps_hat.v[i]);
    out.v[i] = static_cast<float>(mean + sig * z.v[i]);
  }
  return out;
}

// Deterministic (eta = 0) step from t to t_prev < t:
// x0_hat = (x_t - sqrt(1-ab_t) eps_hat) / sqrt(ab_t)
// x_{t_prev} = sqrt(ab_{t_prev}) x0_hat + sqrt(1-ab_{t_prev}) eps_hat.
inline Plane ddim_step(const Plane& x_t, const Plane& eps_hat, int t, int t_prev,
                       const NoiseSchedule& sched) {
  require_same_shape(x_t, eps_hat, "ddim_step");
  if (!(0 <= t_prev && t_prev < t && t <= sched.T()))
    throw DataError("ddim_step: need 0 <= t_prev < t <= T");
  const double ab_t = sched.alpha_bar(t);
  const double ab_p = sched.alpha_bar(t_prev);
  const double s_t = std::sqrt(1.0 - ab_t), s_p = std::sqrt(1.0 - ab_p);
  const double r = std::sqrt(ab_p / ab_t);
  Plane out(x_t.rows, x_t.cols);
  for (size_t i = 0; i < out.size(); ++i) {
    double x0_hat_scaled = r * (static_cast<double>(x_t.v[i]) - s_t * eps_hat.v[i]);
    out.v[i] = static_cast<float>(x0_hat_scaled + s_p * eps_hat.v[i]);
  }
  return out;
}

// Descending timestep subsequence for an n-step DDIM run over a T-step
// schedule: t_j = 1 + round((T-1) j / (n-1)), emitted from T down to 1.
inline std::vector<int> ddim_timesteps(int T, int n) {
  if (n < 1 || n > T) throw ConfigError("ddim_timesteps: need 1 <= n <= T");
  std::vector<int> ts;
  ts.reserve(n);
  if (n == 1) {
    ts.push_back(T);
    return ts;
  }
  for (int j = n - 1; j >= 0; --j) {
    double pos = 1.0 + static_cast<double>(T - 1) * static_cast<double>(j) / (n - 1);
    ts.push_back(static_cast<int>(std::lround(pos)));
  }
  return ts;
}

}  // namespace mambo
