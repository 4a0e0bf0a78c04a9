#ifndef NCGFT_FORMS_HPP
#define NCGFT_FORMS_HPP

#include "ncgft/afcore.hpp"
#include "ncgft/matalg.hpp"

#include <map>
#include <memory>
#include <vector>

namespace ncgft
{

  /// The derivation spaces of a sum of matrix algebras: one sl(n_i) basis
  /// per summand. Shared immutably between forms.
  struct DerivationCalculus
  {
    std::vector<SlBasis> blocks;

    AlgebraProfile profile() const;
  };

  using CalcPtr = std::shared_ptr<const DerivationCalculus>;

  /// Calculus with the normalized Gell-Mann-type basis on every summand.
  CalcPtr standard_calculus(const AlgebraProfile & profile);

  /// Graded antisymmetric multilinear form on derivations with matrix
  /// coefficients, block-decomposed over the summands. Only strictly
  /// increasing multi-indices are stored; evaluation applies permutation
  /// signs.
  class Form
  {
  public:
    using Components = std::map<std::vector<int>, CMat>;

    Form() = default;
    explicit Form(CalcPtr calc);

    const CalcPtr & calc() const { return calc_; }
    const Components & components(int block) const { return comp_[block]; }
    int nblocks() const { return static_cast<int>(comp_.size()); }

    /// Adds c to the coefficient at (block, idx); idx is sorted in place
    /// with the permutation sign applied; repeated indices are dropped.
    void add_component(int block, std::vector<int> idx, const CMat & c);

    /// Coefficient at an arbitrary multi-index (permutation sign applied,
    /// zero matrix when absent or when the index repeats).
    CMat component(int block, std::vector<int> idx) const;

    /// Degree of the (homogeneous) content of one block; -1 when empty.
    int degree(int block) const;

    /// True when every stored coefficient is below tol in max norm.
    bool is_zero(double tol = 0.0) const;

    /// Drops stored coefficients with max norm <= tol.
    void prune(double tol = 1e-14);

    Form & operator+=(const Form & other);
    Form & operator-=(const Form & other);
    Form & operator*=(cplx scalar);

  private:
    CalcPtr calc_;
    std::vector<Components> comp_;
  };

  Form operator+(Form a, const Form & b);
  Form operator-(Form a, const Form & b);
  Form operator*(cplx scalar, Form a);

  /// Degree-0 form from an algebra element.
  Form scalar_form(CalcPtr calc, const BlockElement & a);

  /// The dual-basis 1-form theta^alpha of one summand (matrix coefficient 1).
  Form theta(CalcPtr calc, int block, int alpha);

  /// Volume form: sqrt|g| theta^1 ^ ... ^ theta^top on every summand.
  Form volume_form(CalcPtr calc);

  /// Graded wedge product; block-diagonal over the summands.
  Form wedge(const Form & a, const Form & b);

  /// Koszul differential; d^2 = 0, graded Leibniz over wedge.
  Form koszul_d(const Form & omega);

  /// Hodge star per summand; requires derivation dimension n^2-1 <= 8 and a
  /// diagonal Gram metric. Throws unsupported-dimension above the cap
  /// (callers should use scalar_product, which never materializes the star).
  Form hodge_star(const Form & omega);

  /// Noncommutative integral: top-degree components a sqrt|g| theta^{1..top}
  /// contribute tr(a); everything else integrates to zero.
  cplx integral(const Form & omega);

  /// Closed-form integral(omega ^ star omega'): per summand
  /// (1/p!) omega_{k_1..k_p} omega'^{k_1..k_p} traced, summed over summands.
  /// Requires per-block homogeneous equal degrees.
  cplx scalar_product(const Form & omega, const Form & omegap);

  /// Transport of a form by the inner automorphism a -> u a u^{-1}
  /// (blockwise); coefficients rotate with the matrix U defined by
  /// u^{-1} E_alpha u = U_alpha^beta E_beta.
  Form transport_form(const Form & omega, const BlockElement & u);

  /// Gauge transform of a connection 1-form: omega^u = u^-1 omega u - u^-1 du
  Form connection_transform(const Form & omega, const BlockElement & u);

  /// Curvature 2-form of a connection 1-form: Omega = d omega - omega ^ omega
  Form curvature_form(const Form & omega);

}

#endif
