#include "alc/flow/dopri5.hpp"

#include <cmath>
#include <limits>

#include "alc/errors.hpp"

namespace alc::flow {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

}  // namespace

State DenseSegment::operator()(double t) const {
  const double th = (t - t0) / h, th1 = 1.0 - th;
  return r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
}

double DenseSegment::component(double t, int i) const {
  const double th = (t - t0) / h, th1 = 1.0 - th;
  return r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
}

Dopri5::Dopri5(Rhs rhs, OdeOptions opts) : rhs_(std::move(rhs)), opts_(opts) {}

void Dopri5::reset(double t0, const State& y0) {
  t_ = t0;
  y_ = y0;
  const auto n = y0.size();
  for (State* s : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &ytmp_, &ynew_}) s->resize(n);
  rhs_(t_, y_, k1_);
  h_ = 0.0;
  steps_ = 0;
  if (!k1_.allFinite()) fail("non-finite derivative at the initial point");
}

double Dopri5::initial_step(double t_max) const {
  if (opts_.initial_step > 0.0) return opts_.initial_step;
  const State sc = (opts_.atol + opts_.rtol * y_.array().abs()).matrix();
  const double d0 = std::sqrt((y_.array() / sc.array()).square().mean());
  const double dd = std::sqrt((k1_.array() / sc.array()).square().mean());
  double h = (d0 < 1e-5 || dd < 1e-5) ? 1e-6 : 0.01 * d0 / dd;
  return std::min(h, std::abs(t_max - t_));
}

void Dopri5::fail(const std::string& why) const {
  const double x = y_.size() > 0 ? y_[0] : 0.0;
  const double y = y_.size() > 1 ? y_[1] : 0.0;
  throw IntegrationFailure(why, t_, x, y);
}

void Dopri5::step(double t_max) {
  if (h_ == 0.0) h_ = initial_step(t_max);
  bool rejected = false;
  for (;;) {
    if (++steps_ > opts_.max_steps) fail("step limit exceeded");
    const double remaining = t_max - t_;
    bool last = false;
    double h = h_;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t_));
    if (h < hmin) fail("step size underflow");

    ytmp_ = y_ + h * a21 * k1_;
    rhs_(t_ + c2 * h, ytmp_, k2_);
    ytmp_ = y_ + h * (a31 * k1_ + a32 * k2_);
    rhs_(t_ + c3 * h, ytmp_, k3_);
    ytmp_ = y_ + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    rhs_(t_ + c4 * h, ytmp_, k4_);
    ytmp_ = y_ + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    rhs_(t_ + c5 * h, ytmp_, k5_);
    ytmp_ = y_ + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    rhs_(t_ + h, ytmp_, k6_);
    ynew_ = y_ + h * (a71 * k1_ + a73 * k3_ + a74 * k4_ + a75 * k5_ + a76 * k6_);
    rhs_(t_ + h, ynew_, k7_);

    double err = std::numeric_limits<double>::infinity();
    if (ynew_.allFinite() && k7_.allFinite()) {
      const State e = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
      const State sc = (opts_.atol + opts_.rtol * y_.array().abs().max(ynew_.array().abs())).matrix();
      err = std::sqrt((e.array() / sc.array()).square().mean());
    }
    if (!std::isfinite(err)) {
      h_ = 0.1 * h;
      rejected = true;
      continue;
    }
    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err <= 1.0) {
      seg_.t0 = t_;
      seg_.h = h;
      seg_.r[0] = y_;
      seg_.r[1] = ynew_ - y_;
      seg_.r[2] = h * k1_ - seg_.r[1];
      seg_.r[3] = seg_.r[1] - h * k7_ - seg_.r[2];
      seg_.r[4] = h * (d1 * k1_ + d3 * k3_ + d4 * k4_ + d5 * k5_ + d6 * k6_ + d7 * k7_);
      t_ = last ? t_max : t_ + h;
      y_.swap(ynew_);
      k1_.swap(k7_);
      // after a rejection do not grow the step
      const double grow = rejected ? std::min(fac, 1.0) : fac;
      if (!last || grow < 1.0) h_ = h * grow;
      return;
    }
    h_ = h * fac;
    rejected = true;
  }
}

}  // namespace alc::flow
