#ifndef NCGFT_MATALG_HPP
#define NCGFT_MATALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace ncgft
{

  using cplx = std::complex<double>;
  using CMat = Eigen::MatrixXcd;
  using RMat = Eigen::MatrixXd;
  using RVec = Eigen::VectorXd;

  /// Commutator [A,B] = AB - BA
  inline CMat commutator(const CMat & A, const CMat & B)
  {
    return A * B - B * A;
  }

  /// Frobenius inner product <A,B> = tr(A^dag B); real part is what the
  /// quadratic forms use (for anti-Hermitian arguments it equals -tr(AB)).
  inline cplx frobenius(const CMat & A, const CMat & B)
  {
    return (A.adjoint() * B).trace();
  }

  /// Checks M^dag = -M up to tolerance (relative to ||M|| when nonzero)
  bool is_antihermitian(const CMat & M, double tol = 1e-12);

  /// Orthonormal anti-Hermitian traceless basis of sl(n) with metric and
  /// structure constants: tr(E_a E_b) = -delta_ab, [E_a,E_b] = C^c_ab E_c.
  struct SlBasis
  {
    int n = 0;                  ///< algebra size (n x n matrices)
    std::vector<CMat> E;        ///< n^2-1 generators
    RMat gram;                  ///< g_ab = tr(E_a E_b)
    std::vector<RMat> C;        ///< C[c](a,b) = C^c_ab

    int dim() const { return static_cast<int>(E.size()); }
  };

  /// Gram matrix g_ab = tr(E_a E_b) of a generator family
  RMat gram_metric(const std::vector<CMat> & gens);

  /// Structure constants C^c_ab by expanding each commutator on the basis
  /// through the Gram inverse. Throws on a singular Gram matrix.
  std::vector<RMat> structure_constants(const std::vector<CMat> & gens,
                                        const RMat & gram);

  /// Assembles an SlBasis (gram + structure constants) from explicit
  /// generators; validates tracelessness and anti-Hermiticity.
  SlBasis make_sl_basis(int n, std::vector<CMat> gens);

  /// Generalized Gell-Mann-type basis of sl(n), anti-Hermitian, normalized
  /// to tr(E_a E_b) = -delta_ab. Ordering: for each off-diagonal pair p<q
  /// (lexicographic) the symmetric i(e_pq+e_qp)/sqrt2 then the antisymmetric
  /// (e_pq-e_qp)/sqrt2; the n-1 diagonal matrices
  /// i*diag(1,..,1,-k,0,..)/sqrt(k(k+1)) come last.
  SlBasis gellmann_basis(int n);

  /// Max residual ||[E_a,E_b] - C^c_ab E_c|| over all pairs
  double reconstruction_residual(const SlBasis & basis);

  /// Max Jacobi residual |sum_d (C^d_ab C^e_dc + C^d_bc C^e_da + C^d_ca C^e_db)|
  double jacobi_residual(const SlBasis & basis);

}

#endif
