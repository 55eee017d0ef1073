#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>

namespace alc::flow {

using State = Eigen::VectorXd;

struct OdeOptions {
  double rtol = 1e-11;
  double atol = 1e-13;
  double initial_step = 0.0;  ///< 0 picks a step from the derivative norm
  long max_steps = 5'000'000;
};

/// Dense output over one accepted step [t0, t0 + h].
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  std::array<State, 5> r;

  State operator()(double t) const;
  double component(double t, int i) const;
};

/// Dormand-Prince 5(4) with FSAL and the standard quartic continuous extension.
class Dopri5 {
 public:
  using Rhs = std::function<void(double t, const State& y, State& dy)>;

  Dopri5(Rhs rhs, OdeOptions opts = {});

  void reset(double t0, const State& y0);
  /// Takes one accepted step that does not pass t_max. Throws IntegrationFailure on step
  /// underflow, a non-finite state or too many steps.
  void step(double t_max);

  double t() const { return t_; }
  const State& y() const { return y_; }
  const DenseSegment& last_segment() const { return seg_; }
  long steps() const { return steps_; }

 private:
  double initial_step(double t_max) const;
  [[noreturn]] void fail(const std::string& why) const;

  Rhs rhs_;
  OdeOptions opts_;
  double t_ = 0.0, h_ = 0.0;
  State y_, k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, ynew_;
  DenseSegment seg_;
  long steps_ = 0;
};

}  // namespace alc::flow
