#pragma once

#include <span>
#include <string>
#include <vector>

namespace r0 {

// Variance-preserving noise scale: q(x_t | x) = N(alpha(s) x, s^2 I) with
// alpha(s) = sqrt(1 - s^2), so alpha^2 + sigma^2 = 1 along the whole path.
double alpha_for(double sigma);

enum class ScheduleKind { Linear, Cosine };

ScheduleKind schedule_kind_from_string(const std::string& name);
std::string to_string(ScheduleKind kind);

// Discrete noise levels sigma_0 = 0 < sigma_1 < ... < sigma_K = 1. Index k
// is the level a state x_k lives at; generation walks K down to 0.
struct NoiseSchedule {
  ScheduleKind kind = ScheduleKind::Linear;
  std::vector<double> sigmas;

  int steps() const { return int(sigmas.size()) - 1; }
  double sigma(int k) const { return sigmas.at(std::size_t(k)); }
  double alpha(int k) const { return alpha_for(sigma(k)); }
};

// linear: sigma_k = k/K; cosine: sigma_k = sin(pi/2 * k/K). Endpoints are
// forced to exactly 0 and 1. steps >= 1 required.
NoiseSchedule make_schedule(int steps, ScheduleKind kind);

// Throws FormatError unless sigmas are finite, strictly increasing, and
// pinned to the 0..1 endpoints. Used when a schedule arrives from disk.
void validate_schedule(const NoiseSchedule& sched);

// alpha(sigma) * x + sigma * eps
std::vector<double> forward_diffuse(std::span<const double> x, double sigma,
                                    std::span<const double> eps);

}  // namespace r0
