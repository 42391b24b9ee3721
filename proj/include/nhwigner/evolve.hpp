#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nhwigner/grid.hpp"
#include "nhwigner/params.hpp"
#include "nhwigner/quadrature.hpp"

namespace nhwigner {

/// Pointwise decay coefficient, gamma_eff(q, p) = gamma + alpha p^2 + beta q^2.
/// In the hyperbolic model it changes sign across the diagonals, producing
/// local growth regions.
template <typename Scalar>
Scalar effective_decay_constant(Scalar q, Scalar p_momentum, const NhParams<Scalar>& params) {
  return params.gamma + params.alpha * p_momentum * p_momentum + params.beta * q * q;
}

/// Finite-difference order of the spatial discretization.  Second is the
/// baseline scheme; Fourth trades a wider stencil for much smaller
/// eigenvalue defects at a given resolution.
enum class SpatialOrder { Second, Fourth };

/// Largest stable RK4 step on a grid with spacing h and half-width L: an
/// advective bound from the rotation term (speed grows linearly, up to
/// sqrt(2) L in the corners) and, when alpha + beta > 0, a diffusive bound
/// from the second-derivative term.  Both carry generous safety factors.
template <typename Scalar>
Scalar stability_bound(const NhParams<Scalar>& params, Scalar half_width, Scalar spacing) {
  const Scalar adv =
      Scalar(0.5) * spacing / (std::sqrt(Scalar(2)) * half_width);
  const Scalar ab = params.alpha + params.beta;
  if (ab > Scalar(0))
    return std::min(adv, Scalar(0.25) * spacing * spacing / ab);
  return adv;
}

template <typename Scalar>
Scalar stability_bound(const NhParams<Scalar>& params, const WignerGrid<Scalar>& g) {
  return stability_bound(params, g.half_width, g.spacing());
}

struct StabilityError : std::invalid_argument {
  double bound;
  StabilityError(double dt, double bound_)
      : std::invalid_argument(format(dt, bound_)), bound(bound_) {}

 private:
  static std::string format(double dt, double bound) {
    std::ostringstream os;
    os << std::setprecision(17) << "time step dt = " << dt
       << " violates the stability bound " << bound;
    return os.str();
  }
};

struct InstabilityError : std::runtime_error {
  double time;
  InstabilityError(double t, double max_abs)
      : std::runtime_error(format(t, max_abs)), time(t) {}

 private:
  static std::string format(double t, double max_abs) {
    std::ostringstream os;
    os << "evolution numerically unstable at t = " << t << " (max |W| = " << max_abs << ")";
    return os.str();
  }
};

template <typename Scalar = double>
struct EvolverConfig {
  Scalar dt = Scalar(0);
  Scalar t_end = Scalar(0);
  int record_every = 16;     // steps between stored snapshots
  bool normalized = false;   // rescale to unit trace after every step
  SpatialOrder spatial_order = SpatialOrder::Second;
  /// Anti-diffusive runs (beta < 0) are ill-conditioned as initial-value
  /// problems and are capped at a short horizon unless explicitly forced.
  bool allow_long_antidiffusive = false;
};

using EvolverConfigd = EvolverConfig<double>;

/// Horizon cap applied to anti-diffusive (beta < 0) evolutions by default.
inline constexpr double kAntidiffusiveHorizon = 0.25;

/// Trace of the evolving function at every accepted step.
template <typename Scalar = double>
struct TraceSeries {
  std::vector<Scalar> times;
  std::vector<Scalar> traces;
};

using TraceSeriesd = TraceSeries<double>;

template <typename Scalar = double>
struct EvolveResult {
  WignerGrid<Scalar> state;                    // final grid at t_end
  std::vector<WignerGrid<Scalar>> snapshots;   // every record_every steps plus final
  std::vector<int> snapshot_steps;             // step index of each snapshot
  TraceSeries<Scalar> trace;                   // dense, one entry per step
  std::vector<Scalar> l2_norms;                // aligned with trace.times
};

using EvolveResultd = EvolveResult<double>;

namespace detail {

// Evaluates the right-hand side of the phase-space evolution law
//   dW/dt = -(alpha p^2 + beta q^2 + gamma) W - (p d_q - q d_p) W
//           + (1/4)(alpha d_q^2 + beta d_p^2) W
// on a grid padded with two ghost cells per side (held at zero, which is
// the Dirichlet boundary condition).  For quadratic Hamiltonian and decay
// symbols this second-order PDE is the entire evolution law; the
// higher-order terms of the general star-product series vanish identically.
template <typename Scalar>
class RhsEvaluator {
 public:
  using Array = typename WignerGrid<Scalar>::Array;

  RhsEvaluator(const WignerGrid<Scalar>& g, const NhParams<Scalar>& params, SpatialOrder order)
      : n_(g.n_points),
        h_(g.spacing()),
        params_(params),
        order_(order),
        axis_(g.axis()),
        beta_qsq_(params.beta * axis_.square()) {}

  Eigen::Index n() const { return n_; }

  static Array padded_zero(Eigen::Index n) { return Array::Zero(n + 4, n + 4); }

  template <typename Dst>
  static void set_interior(Array& padded, const Dst& values) {
    padded.block(2, 2, values.rows(), values.cols()) = values;
  }

  static auto interior(Array& padded, Eigen::Index n) { return padded.block(2, 2, n, n); }
  static auto interior(const Array& padded, Eigen::Index n) {
    return padded.block(2, 2, n, n);
  }

  // out must be n x n; padded holds the state with zero ghosts.
  void operator()(const Array& padded, Array& out) const {
    const Scalar inv2h = Scalar(1) / (Scalar(2) * h_);
    const Scalar inv12h = Scalar(1) / (Scalar(12) * h_);
    const Scalar ca = params_.alpha / (Scalar(4) * h_ * h_);
    const Scalar cb = params_.beta / (Scalar(4) * h_ * h_);
    const Scalar ca12 = ca / Scalar(12);
    const Scalar cb12 = cb / Scalar(12);

    for (Eigen::Index j = 0; j < n_; ++j) {
      const Eigen::Index jp = j + 2;
      const Scalar pj = axis_[j];
      const Scalar decay0 = params_.alpha * pj * pj + params_.gamma;

      auto c = padded.col(jp).segment(2, n_);
      auto qu = padded.col(jp).segment(3, n_);
      auto qd = padded.col(jp).segment(1, n_);
      auto pl = padded.col(jp - 1).segment(2, n_);
      auto pr = padded.col(jp + 1).segment(2, n_);

      if (order_ == SpatialOrder::Second) {
        out.col(j) = -(beta_qsq_ + decay0) * c
                   - (pj * inv2h) * (qu - qd)
                   + inv2h * axis_ * (pr - pl)
                   + ca * (qu - Scalar(2) * c + qd)
                   + cb * (pr - Scalar(2) * c + pl);
      } else {
        auto qu2 = padded.col(jp).segment(4, n_);
        auto qd2 = padded.col(jp).segment(0, n_);
        auto pl2 = padded.col(jp - 2).segment(2, n_);
        auto pr2 = padded.col(jp + 2).segment(2, n_);
        out.col(j) = -(beta_qsq_ + decay0) * c
                   - (pj * inv12h) * (qd2 - Scalar(8) * qd + Scalar(8) * qu - qu2)
                   + inv12h * axis_ * (pl2 - Scalar(8) * pl + Scalar(8) * pr - pr2)
                   + ca12 * (-qu2 + Scalar(16) * qu - Scalar(30) * c + Scalar(16) * qd - qd2)
                   + cb12 * (-pr2 + Scalar(16) * pr - Scalar(30) * c + Scalar(16) * pl - pl2);
      }
    }
  }

 private:
  Eigen::Index n_;
  Scalar h_;
  NhParams<Scalar> params_;
  SpatialOrder order_;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> axis_;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> beta_qsq_;
};

}  // namespace detail

/// Right-hand side of the evolution law at the grid points, with
/// Dirichlet-zero ghost values outside the domain.  Central differences of
/// the requested order are used for every derivative.
template <typename Scalar>
typename WignerGrid<Scalar>::Array rhs(const WignerGrid<Scalar>& g, const NhParams<Scalar>& params,
                                       SpatialOrder order = SpatialOrder::Second) {
  detail::RhsEvaluator<Scalar> eval(g, params, order);
  auto padded = detail::RhsEvaluator<Scalar>::padded_zero(g.n_points);
  detail::RhsEvaluator<Scalar>::set_interior(padded, g.values);
  typename WignerGrid<Scalar>::Array out(g.n_points, g.n_points);
  eval(padded, out);
  return out;
}

/// Classic four-stage Runge-Kutta integration of the evolution law.
///
/// The trace and the grid L2 norm are recorded at every step; snapshots are
/// stored every record_every steps and at t_end.  In normalized mode the
/// grid is rescaled to unit trace after every step, which integrates the
/// nonlinear evolution law of the normalized density to the scheme's order
/// (the nonlinear term is exactly the rescaling generator).  A growth of
/// max|W| beyond 1e6 of its initial value in a non-normalized elliptic run
/// aborts with a diagnostic.
template <typename Scalar>
EvolveResult<Scalar> evolve(const WignerGrid<Scalar>& w0, const NhParams<Scalar>& params,
                            const EvolverConfig<Scalar>& cfg) {
  using Array = typename WignerGrid<Scalar>::Array;

  if (!(cfg.t_end > Scalar(0)) || !std::isfinite(cfg.t_end))
    throw std::invalid_argument("evolve: t_end must be positive and finite");
  if (!(cfg.dt > Scalar(0)) || !std::isfinite(cfg.dt))
    throw std::invalid_argument("evolve: dt must be positive and finite");
  if (cfg.record_every < 1)
    throw std::invalid_argument("evolve: record_every must be >= 1");
  const Scalar bound = stability_bound(params, w0);
  if (cfg.dt > bound * (Scalar(1) + Scalar(1e-12)))
    throw StabilityError(static_cast<double>(cfg.dt), static_cast<double>(bound));
  if (params.beta < Scalar(0) && cfg.t_end > Scalar(kAntidiffusiveHorizon) &&
      !cfg.allow_long_antidiffusive)
    throw std::invalid_argument(
        "evolve: beta < 0 makes one second-derivative term anti-diffusive; horizons beyond "
        "t = 0.25 are refused unless allow_long_antidiffusive is set");

  const Eigen::Index n = w0.n_points;
  const Scalar h = w0.spacing();
  const bool elliptic = params.classification() == ModelClass::Elliptic;

  detail::RhsEvaluator<Scalar> eval(w0, params, cfg.spatial_order);
  Array state = detail::RhsEvaluator<Scalar>::padded_zero(n);
  Array stage = detail::RhsEvaluator<Scalar>::padded_zero(n);
  detail::RhsEvaluator<Scalar>::set_interior(state, w0.values);
  Array k1(n, n), k2(n, n), k3(n, n), k4(n, n);

  EvolveResult<Scalar> out;
  out.state = w0;

  if (cfg.normalized) {
    const Scalar tr0 = detail::trapezoid_plane_sum(detail::RhsEvaluator<Scalar>::interior(state, n), h);
    if (tr0 == Scalar(0))
      throw std::invalid_argument("evolve: normalized mode needs a nonzero initial trace");
    detail::RhsEvaluator<Scalar>::interior(state, n) /= tr0;
  }

  const Scalar max0 =
      detail::RhsEvaluator<Scalar>::interior(state, n).abs().maxCoeff();

  const int n_steps =
      std::max<int>(1, static_cast<int>(std::ceil(cfg.t_end / cfg.dt - Scalar(1e-12))));

  auto record = [&](int step, Scalar t) {
    auto inner = detail::RhsEvaluator<Scalar>::interior(state, n);
    out.trace.times.push_back(t);
    out.trace.traces.push_back(detail::trapezoid_plane_sum(inner, h));
    out.l2_norms.push_back(
        std::sqrt(std::max(detail::trapezoid_plane_sum(inner.square(), h), Scalar(0))));
    if (step % cfg.record_every == 0 || step == n_steps) {
      WignerGrid<Scalar> snap;
      snap.half_width = w0.half_width;
      snap.n_points = n;
      snap.values = inner;
      snap.time = t;
      out.snapshots.push_back(std::move(snap));
      out.snapshot_steps.push_back(step);
    }
  };

  record(0, Scalar(0));

  Scalar t = Scalar(0);
  for (int step = 1; step <= n_steps; ++step) {
    const Scalar dt = (step == n_steps) ? cfg.t_end - t : cfg.dt;
    auto inner = detail::RhsEvaluator<Scalar>::interior(state, n);
    auto work = detail::RhsEvaluator<Scalar>::interior(stage, n);

    eval(state, k1);
    work = inner + (dt / Scalar(2)) * k1;
    eval(stage, k2);
    work = inner + (dt / Scalar(2)) * k2;
    eval(stage, k3);
    work = inner + dt * k3;
    eval(stage, k4);
    inner += (dt / Scalar(6)) * (k1 + Scalar(2) * (k2 + k3) + k4);

    t = (step == n_steps) ? cfg.t_end : Scalar(step) * cfg.dt;

    if (cfg.normalized) {
      const Scalar tr = detail::trapezoid_plane_sum(inner, h);
      if (tr == Scalar(0) || !std::isfinite(tr))
        throw InstabilityError(static_cast<double>(t), static_cast<double>(tr));
      inner /= tr;
    }

    const Scalar max_abs = inner.abs().maxCoeff();
    if (!std::isfinite(max_abs))
      throw InstabilityError(static_cast<double>(t), static_cast<double>(max_abs));
    if (elliptic && !cfg.normalized && max0 > Scalar(0) && max_abs > Scalar(1e6) * max0)
      throw InstabilityError(static_cast<double>(t), static_cast<double>(max_abs));

    record(step, t);
  }

  out.state.values = detail::RhsEvaluator<Scalar>::interior(state, n);
  out.state.time = cfg.t_end;
  return out;
}

/// Least-squares slope of -ln(trace) against time over the recorded window.
/// All trace values must be positive.
template <typename Scalar>
Scalar decay_rate_fit(const TraceSeries<Scalar>& ts) {
  const std::size_t m = ts.times.size();
  if (m != ts.traces.size() || m < 2)
    throw std::invalid_argument("decay_rate_fit: need at least two samples");
  Scalar t_mean = Scalar(0), y_mean = Scalar(0);
  for (std::size_t k = 0; k < m; ++k) {
    if (!(ts.traces[k] > Scalar(0)))
      throw std::invalid_argument("decay_rate_fit: traces must be positive");
    t_mean += ts.times[k];
    y_mean += -std::log(ts.traces[k]);
  }
  t_mean /= Scalar(m);
  y_mean /= Scalar(m);
  Scalar num = Scalar(0), den = Scalar(0);
  for (std::size_t k = 0; k < m; ++k) {
    const Scalar dt = ts.times[k] - t_mean;
    num += dt * (-std::log(ts.traces[k]) - y_mean);
    den += dt * dt;
  }
  if (den == Scalar(0)) throw std::invalid_argument("decay_rate_fit: degenerate time samples");
  return num / den;
}

}  // namespace nhwigner
