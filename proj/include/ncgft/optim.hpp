#ifndef NCGFT_OPTIM_HPP
#define NCGFT_OPTIM_HPP

#include <Eigen/Dense>

#include <functional>

namespace ncgft
{

  /// Objective: fills grad and returns the value.
  using ObjectiveFn = std::function<double(const Eigen::VectorXd &, Eigen::VectorXd &)>;

  struct LbfgsOptions
  {
    int max_iters = 2000;
    double grad_tol = 1e-9;   ///< 2-norm of the gradient
    int memory = 10;
    double c1 = 1e-4;         ///< Armijo constant
    double c2 = 0.9;          ///< curvature constant
  };

  struct LbfgsResult
  {
    Eigen::VectorXd x;
    double f = 0;
    double grad_norm = 0;
    int iters = 0;
    bool converged = false;
  };

  /// Limited-memory BFGS with a strong-Wolfe line search.
  LbfgsResult lbfgs_minimize(const ObjectiveFn & fg, Eigen::VectorXd x0,
                             const LbfgsOptions & opts = {});

}

#endif
