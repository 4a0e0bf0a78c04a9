#ifndef NCGFT_GAUGE_HPP
#define NCGFT_GAUGE_HPP

#include "ncgft/lift.hpp"

#include <map>
#include <string>
#include <vector>

namespace ncgft
{

  /// phi-compatible field configuration: the inherited components are the
  /// one-parameter family B_{(i,ell,alpha)} = lambda_i E_{(i,ell,alpha)}
  /// (never free variables); every complement component is a free element of
  /// u(m_j), stored as real coefficients over the orthonormal probe basis
  /// (the m_j^2-1 adapted sl generators plus i*1/sqrt(m_j)).
  struct FieldConfiguration
  {
    std::vector<double> lambdas;                 ///< one per source summand
    std::vector<std::vector<RVec>> free_coeffs;  ///< [block][complement idx] -> RVec(m^2)
  };

  /// B_beta matrices per target block for every sl index (inherited +
  /// complement), all anti-Hermitian.
  using BlockFields = std::vector<std::vector<CMat>>;

  FieldConfiguration zero_config(const LiftedBasis & basis);

  /// lambda = 1 everywhere and every complement field at its basis value
  /// (zero curvature: the identity representation).
  FieldConfiguration basis_config(const LiftedBasis & basis);

  FieldConfiguration lambda_config(const LiftedBasis & basis,
                                   const std::vector<double> & lambdas);

  /// Orthonormal anti-Hermitian basis of u(m): the adapted sl generators
  /// followed by the trace direction i*1/sqrt(m).
  std::vector<CMat> probe_basis(const LiftedBlock & block);

  /// Direction-class labels of the probe basis ("a1","b",...,"0" for trace),
  /// concatenated over target blocks.
  std::vector<std::string> probe_labels(const LiftedBasis & basis);

  BlockFields reconstruct_fields(const LiftedBasis & basis,
                                 const FieldConfiguration & config);

  /// Free coefficients flattened in (block, complement index, probe) order.
  RVec flatten_free(const LiftedBasis & basis, const FieldConfiguration & config);
  FieldConfiguration unflatten_free(const LiftedBasis & basis,
                                    const std::vector<double> & lambdas,
                                    const RVec & x);
  int free_dimension(const LiftedBasis & basis);

  /// Curvature components Theta_{b1 b2} = -([B_b1,B_b2] - C^b3_{b1 b2} B_b3),
  /// stored for b1 < b2 (antisymmetric in the pair).
  struct CurvatureTensor
  {
    std::vector<std::vector<CMat>> pairs;  ///< [block][pair index]

    static int pair_index(int d, int b1, int b2);  // requires b1 < b2
    const CMat & at(int block, int b1, int b2) const;  // requires b1 < b2
  };

  CurvatureTensor curvature_components(const LiftedBasis & basis,
                                       const BlockFields & fields);
  CurvatureTensor curvature_components(const LiftedBasis & basis,
                                       const FieldConfiguration & config);

  /// V = sum_j (1/2) sum_{b1,b2} ||Theta^j_{b1b2}||_F^2  (>= 0, zero iff the
  /// fields form a Lie algebra representation).
  double higgs_potential(const LiftedBasis & basis, const BlockFields & fields);
  double higgs_potential(const LiftedBasis & basis, const FieldConfiguration & config);

  /// Exact gradient of higgs_potential over the flattened free coefficients.
  RVec higgs_gradient(const LiftedBasis & basis, const FieldConfiguration & config);

  /// Gauge-boson mass quadratic form over the probe basis of all u(m_j):
  /// M2_{g1 g2} = sum_j sum_beta Re<[G_g1, B_beta], [G_g2, B_beta]>_F.
  RMat mass_form(const LiftedBasis & basis, const BlockFields & fields);
  RMat mass_form(const LiftedBasis & basis, const FieldConfiguration & config);

  struct MassCluster
  {
    double mass = 0;                           ///< representative (mean) mass
    int degeneracy = 0;
    std::map<std::string, double> class_weights;
    std::string label;                         ///< dominant class
  };

  struct MassSpectrum
  {
    RVec eigenvalues;                 ///< ascending, clamped at 0
    std::vector<double> masses;       ///< sqrt of eigenvalues
    std::vector<std::string> labels;  ///< dominant class per eigenvector
    std::vector<MassCluster> clusters;
  };

  /// Eigendecomposition with clustering (relative tolerance 1e-3) and
  /// direction-class labeling by squared projection weight.
  MassSpectrum mass_spectrum(const RMat & form, const std::vector<std::string> & labels,
                             double cluster_rtol = 1e-3);

  /// Gauge transformation by a source unitary u and its unitized lift
  /// hat_phi(u): all field components conjugate (the inhomogeneous part is
  /// absorbed by the canonical connection).
  BlockFields gauge_transform_fields(const LiftedBasis & basis,
                                     const BlockFields & fields,
                                     const BlockElement & u);

  /// Source fields (one anti-Hermitian matrix per source sl index per
  /// summand) conjugated by u.
  std::vector<std::vector<CMat>> gauge_transform_source(
      const std::vector<SlBasis> & sourceBases,
      const std::vector<std::vector<CMat>> & sourceB,
      const BlockElement & u);

  /// Action-copy decomposition: the J^phi sector of the target action equals
  /// sum_i alpha_{ji} x (source action of summand i).
  struct ActionCopyReport
  {
    std::vector<double> source_action;  ///< per source summand
    std::vector<double> sector_action;  ///< per source summand, target side
    std::vector<double> weight;         ///< sector/source (0 when source is 0)
  };

  ActionCopyReport inherited_action_terms(const LiftedBasis & basis,
                                          const std::vector<std::vector<CMat>> & sourceB);

  /// Injects phi-compatible target fields from source fields: inherited
  /// components are phi_i^{j,ell}(B^A_alpha), complement components given.
  BlockFields compatible_fields(const LiftedBasis & basis,
                                const std::vector<std::vector<CMat>> & sourceB,
                                const BlockFields * freeFields = nullptr);

}

#endif
