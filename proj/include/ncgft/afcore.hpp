#ifndef NCGFT_AFCORE_HPP
#define NCGFT_AFCORE_HPP

#include "ncgft/matalg.hpp"

#include <vector>

namespace ncgft
{

  /// A finite sum of matrix algebras M_{n_1} + ... + M_{n_r}
  struct AlgebraProfile
  {
    std::vector<int> dims;

    int rank() const { return static_cast<int>(dims.size()); }
    bool operator==(const AlgebraProfile &) const = default;
  };

  /// One matrix per summand
  using BlockElement = std::vector<CMat>;

  /// Block-diagonal embedding phi: sum M_{n_i} -> sum M_{m_j} in standard
  /// form: inside target block j the copies of M_{n_i} sit in index order
  /// along the diagonal (alpha_{ji} copies each), zero pad of size n0(j) last.
  struct EmbeddingSpec
  {
    AlgebraProfile source;              ///< (n_1,...,n_r)
    AlgebraProfile target;              ///< (m_1,...,m_s)
    std::vector<std::vector<int>> mult; ///< s x r multiplicity matrix alpha_{ji}
    std::vector<int> pad;               ///< n0(j) = m_j - sum_i alpha_{ji} n_i

    /// Row/column offset of the ell-th copy slot (0-based) of summand i
    /// inside target block j.
    int slot_offset(int j, int i, int ell) const;
    /// Offset of the pad block inside target block j.
    int pad_offset(int j) const;
  };

  /// Builds the normalized spec; throws infeasible-embedding when
  /// sum_i alpha_{ji} n_i > m_j for some j.
  EmbeddingSpec validate_embedding(const AlgebraProfile & source,
                                   const AlgebraProfile & target,
                                   const std::vector<std::vector<int>> & mult);

  /// The identity embedding of a profile into itself.
  EmbeddingSpec identity_embedding(const AlgebraProfile & profile);

  /// phi(a): each target block j is blockdiag(a_1 x alpha_{j1}, ..., 0_{n0}).
  BlockElement phi_apply(const EmbeddingSpec & spec, const BlockElement & a);

  /// phi_i^{j,ell}: inserts a_i at the ell-th copy slot (0-based) of
  /// summand i inside target block j; zero elsewhere.
  CMat phi_block_inject(const EmbeddingSpec & spec, int i, int j, int ell,
                        const CMat & a_i);

  /// Unitized lift: like phi_apply but with identity in the pad, so
  /// hat_phi(u) is invertible (unitary for unitary u) and
  /// hat_phi(u) phi(a) = phi(ua).
  BlockElement hat_phi(const EmbeddingSpec & spec, const BlockElement & u);

  /// Composite spec: multiplicity matrices multiply, pads are recomputed.
  EmbeddingSpec compose_embeddings(const EmbeddingSpec & first,
                                   const EmbeddingSpec & second);

  /// K0 pushforward of a module dimension vector: beta_j = sum_i alpha_{ji} v_i
  std::vector<long long> k0_pushforward(const EmbeddingSpec & spec,
                                        const std::vector<long long> & v);

}

#endif
