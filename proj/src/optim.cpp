#include "ncgft/optim.hpp"
#include <limits>

#include <cmath>
#include <deque>

namespace ncgft
{

  namespace
  {

    using Eigen::VectorXd;

    struct LinePoint
    {
      double a, f, g;  // step, value, directional derivative
    };

    /// Strong-Wolfe line search (bracket + zoom). Returns the accepted step
    /// or 0 on failure.
    double wolfe_search(const ObjectiveFn & fg, const VectorXd & x, const VectorXd & p,
                        double f0, double g0, VectorXd & xnew, VectorXd & gnew,
                        double & fnew, const LbfgsOptions & opts)
    {
      const double c1 = opts.c1, c2 = opts.c2;
      auto eval = [&](double a) {
        xnew = x + a * p;
        double f = fg(xnew, gnew);
        return LinePoint{a, f, gnew.dot(p)};
      };

      auto zoom = [&](LinePoint lo, LinePoint hi) -> double {
        for (int it = 0; it < 50; it++) {
          // quadratic interpolation, safeguarded by bisection
          double a = 0.5 * (lo.a + hi.a);
          double denom = 2.0 * (hi.f - lo.f - lo.g * (hi.a - lo.a));
          if (std::abs(denom) > 1e-300) {
            double trial = lo.a - lo.g * (hi.a - lo.a) * (hi.a - lo.a) / denom;
            double lo_a = std::min(lo.a, hi.a), hi_a = std::max(lo.a, hi.a);
            double margin = 0.1 * (hi_a - lo_a);
            if (trial > lo_a + margin && trial < hi_a - margin) a = trial;
          }
          LinePoint pt = eval(a);
          if (pt.f > f0 + c1 * a * g0 || pt.f >= lo.f) {
            hi = pt;
          } else {
            if (std::abs(pt.g) <= -c2 * g0) { fnew = pt.f; return pt.a; }
            if (pt.g * (hi.a - lo.a) >= 0) hi = lo;
            lo = pt;
          }
          if (std::abs(hi.a - lo.a) < 1e-16) break;
        }
        LinePoint pt = eval(lo.a);
        fnew = pt.f;
        return lo.a;
      };

      LinePoint prev{0.0, f0, g0};
      double a = 1.0;
      const double amax = 1e6;
      for (int it = 0; it < 30; it++) {
        LinePoint pt = eval(a);
        if (pt.f > f0 + c1 * a * g0 || (it > 0 && pt.f >= prev.f)) {
          return zoom(prev, pt);
        }
        if (std::abs(pt.g) <= -c2 * g0) { fnew = pt.f; return pt.a; }
        if (pt.g >= 0) {
          return zoom(pt, prev);
        }
        prev = pt;
        a = std::min(2.0 * a, amax);
        if (a >= amax) break;
      }
      return 0.0;
    }

  }

  LbfgsResult lbfgs_minimize(const ObjectiveFn & fg, Eigen::VectorXd x0,
                             const LbfgsOptions & opts)
  {
    using Eigen::VectorXd;
    const int n = static_cast<int>(x0.size());
    LbfgsResult res;
    res.x = std::move(x0);

    VectorXd g(n), gnew(n), xnew(n);
    double f = fg(res.x, g);

    std::deque<VectorXd> S, Y;
    std::deque<double> rho;

    for (res.iters = 0; res.iters < opts.max_iters; res.iters++) {
      res.grad_norm = g.norm();
      if (res.grad_norm <= opts.grad_tol) {
        res.converged = true;
        break;
      }

      // two-loop recursion
      VectorXd q = g;
      const int mem = static_cast<int>(S.size());
      std::vector<double> alpha(mem);
      for (int k = mem - 1; k >= 0; k--) {
        alpha[k] = rho[k] * S[k].dot(q);
        q -= alpha[k] * Y[k];
      }
      if (mem > 0) {
        double gamma = S.back().dot(Y.back()) / Y.back().squaredNorm();
        q *= gamma;
      }
      for (int k = 0; k < mem; k++) {
        double beta = rho[k] * Y[k].dot(q);
        q += (alpha[k] - beta) * S[k];
      }
      VectorXd p = -q;

      double g0 = g.dot(p);
      if (g0 >= 0) {  // not a descent direction; restart from steepest descent
        p = -g;
        g0 = g.dot(p);
        S.clear(); Y.clear(); rho.clear();
      }

      double fnew = f;
      double step = wolfe_search(fg, res.x, p, f, g0, xnew, gnew, fnew, opts);
      if (step <= 0.0 || !(fnew < f)) {
        // Line search stalled. Near a minimum the achievable gradient norm is
        // limited by rounding in f (about sqrt(eps) relative), so accept the
        // point when the gradient is at that floor.
        res.grad_norm = g.norm();
        const double floor = std::sqrt(std::numeric_limits<double>::epsilon())
                             * (1.0 + std::abs(f));
        res.converged = res.grad_norm <= std::max(10.0 * opts.grad_tol, 10.0 * floor);
        break;
      }

      VectorXd s = xnew - res.x;
      VectorXd y = gnew - g;
      double sy = s.dot(y);
      if (sy > 1e-14 * s.norm() * y.norm()) {
        S.push_back(s); Y.push_back(y); rho.push_back(1.0 / sy);
        if (static_cast<int>(S.size()) > opts.memory) {
          S.pop_front(); Y.pop_front(); rho.pop_front();
        }
      }
      res.x = xnew;
      g = gnew;
      f = fnew;
    }
    res.f = f;
    res.grad_norm = g.norm();
    if (res.grad_norm <= opts.grad_tol) res.converged = true;
    return res;
  }

}
