#include "r0/schedule.hpp"

#include <cmath>

#include "r0/errors.hpp"
#include "r0/vec.hpp"

namespace r0 {

double alpha_for(double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0))
    throw std::invalid_argument("alpha_for: sigma outside [0, 1]");
  return std::sqrt(1.0 - sigma * sigma);
}

ScheduleKind schedule_kind_from_string(const std::string& name) {
  if (name == "linear") return ScheduleKind::Linear;
  if (name == "cosine") return ScheduleKind::Cosine;
  throw ConfigError("unknown schedule kind '" + name + "'");
}

std::string to_string(ScheduleKind kind) {
  return kind == ScheduleKind::Linear ? "linear" : "cosine";
}

NoiseSchedule make_schedule(int steps, ScheduleKind kind) {
  if (steps < 1) throw std::invalid_argument("make_schedule: steps < 1");
  NoiseSchedule sched;
  sched.kind = kind;
  sched.sigmas.resize(std::size_t(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    double t = double(k) / double(steps);
    sched.sigmas[std::size_t(k)] =
        kind == ScheduleKind::Linear ? t : std::sin(1.57079632679489661923 * t);
  }
  sched.sigmas.front() = 0.0;
  sched.sigmas.back() = 1.0;
  return sched;
}

void validate_schedule(const NoiseSchedule& sched) {
  if (sched.sigmas.size() < 2)
    throw FormatError("schedule: fewer than two levels");
  if (!all_finite(sched.sigmas))
    throw FormatError("schedule: non-finite sigma");
  if (sched.sigmas.front() != 0.0 || sched.sigmas.back() != 1.0)
    throw FormatError("schedule: endpoints must be 0 and 1");
  for (std::size_t k = 1; k < sched.sigmas.size(); ++k)
    if (!(sched.sigmas[k] > sched.sigmas[k - 1]))
      throw FormatError("schedule: sigmas not strictly increasing");
}

std::vector<double> forward_diffuse(std::span<const double> x, double sigma,
                                    std::span<const double> eps) {
  if (x.size() != eps.size())
    throw std::invalid_argument("forward_diffuse: x/eps size mismatch");
  double a = alpha_for(sigma);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + sigma * eps[i];
  return out;
}

}  // namespace r0
