#ifndef NCGFT_LIFT_HPP
#define NCGFT_LIFT_HPP

#include "ncgft/afcore.hpp"
#include "ncgft/forms.hpp"
#include "ncgft/matalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace ncgft
{

  /// Complement construction families (appendix order)
  enum class Family
  {
    PadBlock = 0,            ///< traceless generators inside the pad block
    OffEnvelope,             ///< off-diagonal pairs between enveloping blocks
    IntraEnvelopeOffdiag,    ///< off-diagonal pairs between copy slots
    CopyDifference,          ///< diagonal differences of copy identities
    CrossEnvelopeDiagonal    ///< traceless diagonal across enveloping blocks
  };

  /// Label of one generator of the adapted sl(m_j) basis
  struct GenLabel
  {
    bool inherited = false;
    int i = -1;              ///< source summand (inherited triple)
    int ell = -1;            ///< copy slot (inherited triple)
    int alpha = -1;          ///< source generator index (inherited triple)
    int family = -1;         ///< Family as int, complement only
    char cls = '?';          ///< direction class a/b/c/d/e ('?' if unclassified)
    int cls_i = -1;          ///< summand index for classes a and c

    std::string class_string() const;  ///< "a1", "b", "c2", "d", "e", "?"
  };

  /// Adapted basis of sl(m_j): inherited generators indexed by J^phi first
  /// (triples (i,ell,alpha) in lexicographic order), then the orthonormalized
  /// five-family complement J^c.
  struct LiftedBlock
  {
    int m = 0;
    SlBasis full;                      ///< gram = -I, full structure constants
    int n_inherited = 0;               ///< |J^phi|
    std::vector<GenLabel> labels;      ///< one per generator
    std::array<int, 5> family_counts{};///< complement sizes per family
  };

  struct LiftedBasis
  {
    EmbeddingSpec spec;
    std::vector<SlBasis> source;       ///< one basis per source summand
    std::vector<LiftedBlock> blocks;   ///< one per target summand

    /// Derivation calculus over the target with the adapted bases.
    CalcPtr target_calculus() const;
  };

  /// Builds the phi-adapted basis of every sl(m_j). Source bases must be
  /// orthonormal (tr(E_a E_b) = -delta_ab). Direction classes are filled in
  /// automatically for single-block targets.
  LiftedBasis build_lifted_basis(const EmbeddingSpec & spec,
                                 const std::vector<SlBasis> & sourceBases);

  /// Direction classification of the adapted generators (single-block
  /// targets only): a(i) inherited, b/d off-diagonal/diagonal inside the
  /// envelope, c(i)/e off-diagonal/diagonal outside it.
  std::vector<GenLabel> classify_directions(const LiftedBlock & block,
                                            const EmbeddingSpec & spec);

  struct DofCounts
  {
    int n_idof = 0;   ///< |J^phi| summed over target blocks
    int n_ndof = 0;   ///< |J^c| summed over target blocks
    double r_dof = 0; ///< n_ndof / n_idof
  };

  DofCounts dof_counts(const LiftedBasis & basis);

}

#endif
