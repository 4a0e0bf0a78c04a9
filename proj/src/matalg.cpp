#include "ncgft/matalg.hpp"

#include <cmath>
#include <stdexcept>

namespace ncgft
{

  bool is_antihermitian(const CMat & M, double tol)
  {
    double scale = std::max(1.0, M.norm());
    return (M + M.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
  }

  RMat gram_metric(const std::vector<CMat> & gens)
  {
    const int d = static_cast<int>(gens.size());
    RMat g(d, d);
    for (int a = 0; a < d; a++) {
      for (int b = 0; b <= a; b++) {
        cplx t = (gens[a] * gens[b]).trace();
        g(a, b) = g(b, a) = t.real();
      }
    }
    return g;
  }

  std::vector<RMat> structure_constants(const std::vector<CMat> & gens,
                                        const RMat & gram)
  {
    const int d = static_cast<int>(gens.size());
    Eigen::FullPivLU<RMat> lu(gram);
    if (!lu.isInvertible()) {
      throw std::runtime_error("structure_constants: degenerate metric (singular Gram matrix)");
    }
    RMat ginv = lu.inverse();

    std::vector<RMat> C(d, RMat::Zero(d, d));
    for (int a = 0; a < d; a++) {
      for (int b = 0; b < a; b++) {
        CMat br = commutator(gens[a], gens[b]);
        // tr(E_e [E_a,E_b]) = C^c_ab g_ce  =>  C^c_ab = g^{ce} tr(E_e [..])
        RVec t(d);
        for (int e = 0; e < d; e++) {
          t(e) = (gens[e] * br).trace().real();
        }
        RVec c = ginv * t;
        for (int e = 0; e < d; e++) {
          C[e](a, b) = c(e);
          C[e](b, a) = -c(e);
        }
      }
    }
    return C;
  }

  SlBasis make_sl_basis(int n, std::vector<CMat> gens)
  {
    if (static_cast<int>(gens.size()) != n * n - 1) {
      throw std::invalid_argument("make_sl_basis: expected n^2-1 generators");
    }
    for (const CMat & E : gens) {
      if (E.rows() != n || E.cols() != n) {
        throw std::invalid_argument("make_sl_basis: generator has wrong shape");
      }
      if (std::abs(E.trace()) > 1e-10 || !is_antihermitian(E, 1e-10)) {
        throw std::invalid_argument("make_sl_basis: generator not traceless anti-Hermitian");
      }
    }
    SlBasis basis;
    basis.n = n;
    basis.E = std::move(gens);
    basis.gram = gram_metric(basis.E);
    basis.C = structure_constants(basis.E, basis.gram);
    return basis;
  }

  SlBasis gellmann_basis(int n)
  {
    if (n < 2) {
      throw std::invalid_argument("gellmann_basis: need n >= 2");
    }
    const cplx I(0.0, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<CMat> gens;
    gens.reserve(n * n - 1);
    for (int p = 0; p < n; p++) {
      for (int q = p + 1; q < n; q++) {
        CMat X = CMat::Zero(n, n);
        X(p, q) = I * s;
        X(q, p) = I * s;
        gens.push_back(X);
        CMat Y = CMat::Zero(n, n);
        Y(p, q) = s;
        Y(q, p) = -s;
        gens.push_back(Y);
      }
    }
    for (int k = 1; k < n; k++) {
      CMat D = CMat::Zero(n, n);
      double norm = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
      for (int t = 0; t < k; t++) {
        D(t, t) = I * norm;
      }
      D(k, k) = -I * (static_cast<double>(k) * norm);
      gens.push_back(D);
    }
    return make_sl_basis(n, std::move(gens));
  }

  double reconstruction_residual(const SlBasis & basis)
  {
    const int d = basis.dim();
    double worst = 0.0;
    for (int a = 0; a < d; a++) {
      for (int b = 0; b < a; b++) {
        CMat rec = CMat::Zero(basis.E[0].rows(), basis.E[0].cols());
        for (int c = 0; c < d; c++) {
          if (basis.C[c](a, b) != 0.0) {
            rec += basis.C[c](a, b) * basis.E[c];
          }
        }
        worst = std::max(worst, (commutator(basis.E[a], basis.E[b]) - rec).norm());
      }
    }
    return worst;
  }

  double jacobi_residual(const SlBasis & basis)
  {
    const int d = basis.dim();
    double worst = 0.0;
    for (int a = 0; a < d; a++) {
      for (int b = a + 1; b < d; b++) {
        for (int c = b + 1; c < d; c++) {
          for (int e = 0; e < d; e++) {
            double sum = 0.0;
            for (int m = 0; m < d; m++) {
              sum += basis.C[m](a, b) * basis.C[e](m, c)
                   + basis.C[m](b, c) * basis.C[e](m, a)
                   + basis.C[m](c, a) * basis.C[e](m, b);
            }
            worst = std::max(worst, std::abs(sum));
          }
        }
      }
    }
    return worst;
  }

}
