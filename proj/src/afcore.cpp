#include "ncgft/afcore.hpp"

#include <stdexcept>
#include <string>

namespace ncgft
{

  int EmbeddingSpec::slot_offset(int j, int i, int ell) const
  {
    int off = 0;
    for (int k = 0; k < i; k++) {
      off += mult[j][k] * source.dims[k];
    }
    return off + ell * source.dims[i];
  }

  int EmbeddingSpec::pad_offset(int j) const
  {
    int off = 0;
    for (int k = 0; k < source.rank(); k++) {
      off += mult[j][k] * source.dims[k];
    }
    return off;
  }

  EmbeddingSpec validate_embedding(const AlgebraProfile & source,
                                   const AlgebraProfile & target,
                                   const std::vector<std::vector<int>> & mult)
  {
    const int r = source.rank();
    const int s = target.rank();
    for (int n : source.dims) {
      if (n < 1) throw std::invalid_argument("validate_embedding: source dims must be >= 1");
    }
    for (int m : target.dims) {
      if (m < 1) throw std::invalid_argument("validate_embedding: target dims must be >= 1");
    }
    if (static_cast<int>(mult.size()) != s) {
      throw std::invalid_argument("validate_embedding: multiplicity matrix must have one row per target block");
    }
    EmbeddingSpec spec;
    spec.source = source;
    spec.target = target;
    spec.mult = mult;
    spec.pad.resize(s);
    for (int j = 0; j < s; j++) {
      if (static_cast<int>(mult[j].size()) != r) {
        throw std::invalid_argument("validate_embedding: multiplicity row has wrong length");
      }
      long long used = 0;
      for (int i = 0; i < r; i++) {
        if (mult[j][i] < 0) {
          throw std::invalid_argument("validate_embedding: negative multiplicity");
        }
        used += static_cast<long long>(mult[j][i]) * source.dims[i];
      }
      if (used > target.dims[j]) {
        throw std::invalid_argument(
            "validate_embedding: infeasible embedding, block " + std::to_string(j + 1)
            + " needs " + std::to_string(used) + " > " + std::to_string(target.dims[j]));
      }
      spec.pad[j] = target.dims[j] - static_cast<int>(used);
    }
    return spec;
  }

  EmbeddingSpec identity_embedding(const AlgebraProfile & profile)
  {
    std::vector<std::vector<int>> mult(profile.rank(), std::vector<int>(profile.rank(), 0));
    for (int i = 0; i < profile.rank(); i++) {
      mult[i][i] = 1;
    }
    return validate_embedding(profile, profile, mult);
  }

  static void check_block_dims(const AlgebraProfile & profile, const BlockElement & a,
                               const char * who)
  {
    if (static_cast<int>(a.size()) != profile.rank()) {
      throw std::invalid_argument(std::string(who) + ": wrong number of blocks");
    }
    for (int i = 0; i < profile.rank(); i++) {
      if (a[i].rows() != profile.dims[i] || a[i].cols() != profile.dims[i]) {
        throw std::invalid_argument(std::string(who) + ": block dimension mismatch");
      }
    }
  }

  BlockElement phi_apply(const EmbeddingSpec & spec, const BlockElement & a)
  {
    check_block_dims(spec.source, a, "phi_apply");
    BlockElement out;
    out.reserve(spec.target.rank());
    for (int j = 0; j < spec.target.rank(); j++) {
      CMat bj = CMat::Zero(spec.target.dims[j], spec.target.dims[j]);
      for (int i = 0; i < spec.source.rank(); i++) {
        const int n = spec.source.dims[i];
        for (int ell = 0; ell < spec.mult[j][i]; ell++) {
          const int off = spec.slot_offset(j, i, ell);
          bj.block(off, off, n, n) = a[i];
        }
      }
      out.push_back(std::move(bj));
    }
    return out;
  }

  CMat phi_block_inject(const EmbeddingSpec & spec, int i, int j, int ell,
                        const CMat & a_i)
  {
    if (i < 0 || i >= spec.source.rank() || j < 0 || j >= spec.target.rank()) {
      throw std::invalid_argument("phi_block_inject: block index out of range");
    }
    if (ell < 0 || ell >= spec.mult[j][i]) {
      throw std::invalid_argument("phi_block_inject: invalid slot");
    }
    const int n = spec.source.dims[i];
    if (a_i.rows() != n || a_i.cols() != n) {
      throw std::invalid_argument("phi_block_inject: matrix dimension mismatch");
    }
    CMat out = CMat::Zero(spec.target.dims[j], spec.target.dims[j]);
    const int off = spec.slot_offset(j, i, ell);
    out.block(off, off, n, n) = a_i;
    return out;
  }

  BlockElement hat_phi(const EmbeddingSpec & spec, const BlockElement & u)
  {
    check_block_dims(spec.source, u, "hat_phi");
    for (int i = 0; i < spec.source.rank(); i++) {
      Eigen::FullPivLU<CMat> lu(u[i]);
      if (!lu.isInvertible()) {
        throw std::invalid_argument("hat_phi: singular block");
      }
    }
    BlockElement out = phi_apply(spec, u);
    for (int j = 0; j < spec.target.rank(); j++) {
      const int off = spec.pad_offset(j);
      for (int t = off; t < spec.target.dims[j]; t++) {
        out[j](t, t) = 1.0;
      }
    }
    return out;
  }

  EmbeddingSpec compose_embeddings(const EmbeddingSpec & first,
                                   const EmbeddingSpec & second)
  {
    if (!(first.target == second.source)) {
      throw std::invalid_argument("compose_embeddings: profile mismatch");
    }
    const int r = first.source.rank();
    const int s = first.target.rank();
    const int t = second.target.rank();
    std::vector<std::vector<int>> mult(t, std::vector<int>(r, 0));
    for (int k = 0; k < t; k++) {
      for (int i = 0; i < r; i++) {
        for (int j = 0; j < s; j++) {
          mult[k][i] += second.mult[k][j] * first.mult[j][i];
        }
      }
    }
    return validate_embedding(first.source, second.target, mult);
  }

  std::vector<long long> k0_pushforward(const EmbeddingSpec & spec,
                                        const std::vector<long long> & v)
  {
    if (static_cast<int>(v.size()) != spec.source.rank()) {
      throw std::invalid_argument("k0_pushforward: dimension vector length mismatch");
    }
    std::vector<long long> out(spec.target.rank(), 0);
    for (int j = 0; j < spec.target.rank(); j++) {
      for (int i = 0; i < spec.source.rank(); i++) {
        out[j] += static_cast<long long>(spec.mult[j][i]) * v[i];
      }
    }
    return out;
  }

}
