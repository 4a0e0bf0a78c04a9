#include "ncgft/gauge.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncgft
{

  namespace
  {

    /// sparse structure constants per (b1<b2) pair
    struct SparseC
    {
      std::vector<std::vector<std::pair<int, double>>> bypair;
    };

    SparseC sparse_constants(const SlBasis & basis)
    {
      const int d = basis.dim();
      SparseC out;
      out.bypair.resize(d * (d - 1) / 2);
      int p = 0;
      for (int b1 = 0; b1 < d; b1++) {
        for (int b2 = b1 + 1; b2 < d; b2++, p++) {
          for (int b3 = 0; b3 < d; b3++) {
            double c = basis.C[b3](b1, b2);
            if (std::abs(c) > 1e-13) out.bypair[p].push_back({b3, c});
          }
        }
      }
      return out;
    }

    double re_frob(const CMat & A, const CMat & B)
    {
      return A.conjugate().cwiseProduct(B).sum().real();
    }

  }

  int CurvatureTensor::pair_index(int d, int b1, int b2)
  {
    return b1 * d - b1 * (b1 + 1) / 2 + (b2 - b1 - 1);
  }

  const CMat & CurvatureTensor::at(int block, int b1, int b2) const
  {
    // d recovered from the pair count: d(d-1)/2 entries
    const int np = static_cast<int>(pairs[block].size());
    const int d = static_cast<int>((1 + std::sqrt(1.0 + 8.0 * np)) / 2 + 0.5);
    return pairs[block][pair_index(d, b1, b2)];
  }

  FieldConfiguration zero_config(const LiftedBasis & basis)
  {
    FieldConfiguration cfg;
    cfg.lambdas.assign(basis.spec.source.rank(), 0.0);
    cfg.free_coeffs.resize(basis.blocks.size());
    for (size_t j = 0; j < basis.blocks.size(); j++) {
      const LiftedBlock & b = basis.blocks[j];
      const int nc = b.full.dim() - b.n_inherited;
      cfg.free_coeffs[j].assign(nc, RVec::Zero(b.m * b.m));
    }
    return cfg;
  }

  FieldConfiguration basis_config(const LiftedBasis & basis)
  {
    FieldConfiguration cfg = zero_config(basis);
    cfg.lambdas.assign(basis.spec.source.rank(), 1.0);
    for (size_t j = 0; j < basis.blocks.size(); j++) {
      const LiftedBlock & b = basis.blocks[j];
      for (int k = 0; k < b.full.dim() - b.n_inherited; k++) {
        cfg.free_coeffs[j][k](b.n_inherited + k) = 1.0;  // B = E on the complement
      }
    }
    return cfg;
  }

  FieldConfiguration lambda_config(const LiftedBasis & basis,
                                   const std::vector<double> & lambdas)
  {
    if (static_cast<int>(lambdas.size()) != basis.spec.source.rank()) {
      throw std::invalid_argument("lambda_config: one lambda per source summand required");
    }
    FieldConfiguration cfg = zero_config(basis);
    cfg.lambdas = lambdas;
    return cfg;
  }

  std::vector<CMat> probe_basis(const LiftedBlock & block)
  {
    std::vector<CMat> probes = block.full.E;
    probes.push_back(cplx(0.0, 1.0 / std::sqrt(double(block.m)))
                     * CMat::Identity(block.m, block.m));
    return probes;
  }

  std::vector<std::string> probe_labels(const LiftedBasis & basis)
  {
    std::vector<std::string> out;
    for (const LiftedBlock & b : basis.blocks) {
      for (const GenLabel & lab : b.labels) out.push_back(lab.class_string());
      out.push_back("0");
    }
    return out;
  }

  BlockFields reconstruct_fields(const LiftedBasis & basis,
                                 const FieldConfiguration & config)
  {
    BlockFields fields(basis.blocks.size());
    for (size_t j = 0; j < basis.blocks.size(); j++) {
      const LiftedBlock & b = basis.blocks[j];
      std::vector<CMat> probes = probe_basis(b);
      fields[j].resize(b.full.dim());
      for (int g = 0; g < b.full.dim(); g++) {
        if (g < b.n_inherited) {
          fields[j][g] = config.lambdas[b.labels[g].i] * b.full.E[g];
        } else {
          const RVec & c = config.free_coeffs[j][g - b.n_inherited];
          CMat B = CMat::Zero(b.m, b.m);
          for (int k = 0; k < c.size(); k++) {
            if (c(k) != 0.0) B += c(k) * probes[k];
          }
          fields[j][g] = std::move(B);
        }
      }
    }
    return fields;
  }

  RVec flatten_free(const LiftedBasis & basis, const FieldConfiguration & config)
  {
    RVec x(free_dimension(basis));
    int w = 0;
    for (size_t j = 0; j < basis.blocks.size(); j++) {
      for (const RVec & c : config.free_coeffs[j]) {
        x.segment(w, c.size()) = c;
        w += static_cast<int>(c.size());
      }
    }
    return x;
  }

  FieldConfiguration unflatten_free(const LiftedBasis & basis,
                                    const std::vector<double> & lambdas,
                                    const RVec & x)
  {
    FieldConfiguration cfg = lambda_config(basis, lambdas);
    int w = 0;
    for (size_t j = 0; j < basis.blocks.size(); j++) {
      for (RVec & c : cfg.free_coeffs[j]) {
        c = x.segment(w, c.size());
        w += static_cast<int>(c.size());
      }
    }
    return cfg;
  }

  int free_dimension(const LiftedBasis & basis)
  {
    int total = 0;
    for (const LiftedBlock & b : basis.blocks) {
      total += (b.full.dim() - b.n_inherited) * b.m * b.m;
    }
    return total;
  }

  CurvatureTensor curvature_components(const LiftedBasis & basis,
                                       const BlockFields & fields)
  {
    CurvatureTensor out;
    out.pairs.resize(basis.blocks.size());
    for (size_t j = 0; j < basis.blocks.size(); j++) {
      const LiftedBlock & blk = basis.blocks[j];
      const int d = blk.full.dim();
      const SparseC sc = sparse_constants(blk.full);
      const std::vector<CMat> & B = fields[j];
      out.pairs[j].reserve(d * (d - 1) / 2);
      int p = 0;
      for (int b1 = 0; b1 < d; b1++) {
        for (int b2 = b1 + 1; b2 < d; b2++, p++) {
          CMat theta = -(B[b1] * B[b2] - B[b2] * B[b1]);
          for (const auto & [b3, c] : sc.bypair[p]) {
            theta += c * B[b3];
          }
          out.pairs[j].push_back(std::move(theta));
        }
      }
    }
    return out;
  }

  CurvatureTensor curvature_components(const LiftedBasis & basis,
                                       const FieldConfiguration & config)
  {
    return curvature_components(basis, reconstruct_fields(basis, config));
  }

  double higgs_potential(const LiftedBasis & basis, const BlockFields & fields)
  {
    CurvatureTensor theta = curvature_components(basis, fields);
    double v = 0.0;
    for (const auto & block : theta.pairs) {
      for (const CMat & t : block) v += t.squaredNorm();
    }
    return v;
  }

  double higgs_potential(const LiftedBasis & basis, const FieldConfiguration & config)
  {
    return higgs_potential(basis, reconstruct_fields(basis, config));
  }

  RVec higgs_gradient(const LiftedBasis & basis, const FieldConfiguration & config)
  {
    BlockFields fields = reconstruct_fields(basis, config);
    CurvatureTensor theta = curvature_components(basis, fields);
    RVec grad = RVec::Zero(free_dimension(basis));
    int w = 0;
    for (size_t j = 0; j < basis.blocks.size(); j++) {
      const LiftedBlock & blk = basis.blocks[j];
      const int d = blk.full.dim();
      const std::vector<CMat> & B = fields[j];
      std::vector<CMat> probes = probe_basis(blk);

      // N = sum_{b1<b2} C^beta_{b1b2} Theta_{b1b2} per free beta (linear term)
      // plus the commutator chain -2 sum_b2 [B_b2, Theta_{beta,b2}]
      for (int g = blk.n_inherited; g < d; g++) {
        CMat G = CMat::Zero(blk.m, blk.m);
        for (int b2 = 0; b2 < d; b2++) {
          if (b2 == g) continue;
          CMat th = (g < b2) ? theta.pairs[j][CurvatureTensor::pair_index(d, g, b2)]
                             : CMat(-theta.pairs[j][CurvatureTensor::pair_index(d, b2, g)]);
          G -= 2.0 * (B[b2] * th - th * B[b2]);
        }
        int p = 0;
        for (int b1 = 0; b1 < d; b1++) {
          for (int b2 = b1 + 1; b2 < d; b2++, p++) {
            double c = blk.full.C[g](b1, b2);
            if (c != 0.0) G += 2.0 * c * theta.pairs[j][p];
          }
        }
        for (int k = 0; k < blk.m * blk.m; k++) {
          grad(w++) = re_frob(probes[k], G);
        }
      }
    }
    return grad;
  }

  RMat mass_form(const LiftedBasis & basis, const BlockFields & fields)
  {
    int total = 0;
    for (const LiftedBlock & b : basis.blocks) total += b.m * b.m;
    RMat M = RMat::Zero(total, total);
    int off = 0;
    for (size_t j = 0; j < basis.blocks.size(); j++) {
      const LiftedBlock & blk = basis.blocks[j];
      const int np = blk.m * blk.m;
      std::vector<CMat> probes = probe_basis(blk);
      const std::vector<CMat> & B = fields[j];
      std::vector<std::vector<CMat>> K(np);
      for (int g = 0; g < np; g++) {
        K[g].reserve(B.size());
        for (const CMat & b : B) K[g].push_back(probes[g] * b - b * probes[g]);
      }
      for (int g1 = 0; g1 < np; g1++) {
        for (int g2 = g1; g2 < np; g2++) {
          double sum = 0.0;
          for (size_t beta = 0; beta < B.size(); beta++) {
            sum += re_frob(K[g1][beta], K[g2][beta]);
          }
          M(off + g1, off + g2) = M(off + g2, off + g1) = sum;
        }
      }
      off += np;
    }
    return M;
  }

  RMat mass_form(const LiftedBasis & basis, const FieldConfiguration & config)
  {
    return mass_form(basis, reconstruct_fields(basis, config));
  }

  MassSpectrum mass_spectrum(const RMat & form, const std::vector<std::string> & labels,
                             double cluster_rtol)
  {
    if ((form - form.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
      throw std::runtime_error("mass_spectrum: form not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(form);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("mass_spectrum: eigendecomposition failed");
    }
    RVec ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-7 * std::max(1.0, ev.cwiseAbs().maxCoeff())) {
      throw std::runtime_error("mass_spectrum: form significantly non-PSD");
    }

    MassSpectrum out;
    const int n = static_cast<int>(ev.size());
    out.eigenvalues = ev.cwiseMax(0.0);
    out.masses.resize(n);
    for (int k = 0; k < n; k++) out.masses[k] = std::sqrt(out.eigenvalues(k));

    // dominant-class label per eigenvector
    std::vector<std::string> classes;
    for (const std::string & lab : labels) {
      if (std::find(classes.begin(), classes.end(), lab) == classes.end()) classes.push_back(lab);
    }
    out.labels.resize(n);
    for (int k = 0; k < n; k++) {
      std::map<std::string, double> wt;
      for (int g = 0; g < n; g++) {
        wt[labels[g]] += es.eigenvectors()(g, k) * es.eigenvectors()(g, k);
      }
      double best = -1.0;
      for (const std::string & c : classes) {
        if (wt[c] > best) { best = wt[c]; out.labels[k] = c; }
      }
    }

    // clusters (eigenvalues ascending)
    int start = 0;
    while (start < n) {
      int end = start + 1;
      while (end < n
             && out.eigenvalues(end) - out.eigenvalues(start)
                    <= cluster_rtol * std::max(out.eigenvalues(end), 1e-9)) {
        end++;
      }
      MassCluster cl;
      cl.degeneracy = end - start;
      double msum = 0.0;
      for (int k = start; k < end; k++) {
        msum += out.masses[k];
        for (int g = 0; g < n; g++) {
          cl.class_weights[labels[g]] += es.eigenvectors()(g, k) * es.eigenvectors()(g, k);
        }
      }
      cl.mass = msum / cl.degeneracy;
      double best = -1.0;
      for (const auto & [c, wgt] : cl.class_weights) {
        if (wgt > best) { best = wgt; cl.label = c; }
      }
      out.clusters.push_back(std::move(cl));
      start = end;
    }
    return out;
  }

  BlockFields gauge_transform_fields(const LiftedBasis & basis,
                                     const BlockFields & fields,
                                     const BlockElement & u)
  {
    BlockElement v = hat_phi(basis.spec, u);
    BlockFields out(fields.size());
    for (size_t j = 0; j < fields.size(); j++) {
      CMat vinv = v[j].adjoint();
      out[j].reserve(fields[j].size());
      for (const CMat & B : fields[j]) out[j].push_back(vinv * B * v[j]);
    }
    return out;
  }

  std::vector<std::vector<CMat>> gauge_transform_source(
      const std::vector<SlBasis> & sourceBases,
      const std::vector<std::vector<CMat>> & sourceB,
      const BlockElement & u)
  {
    std::vector<std::vector<CMat>> out(sourceB.size());
    for (size_t i = 0; i < sourceB.size(); i++) {
      CMat uinv = u[i].adjoint();
      out[i].reserve(sourceB[i].size());
      for (const CMat & B : sourceB[i]) out[i].push_back(uinv * B * u[i]);
    }
    (void)sourceBases;
    return out;
  }

  BlockFields compatible_fields(const LiftedBasis & basis,
                                const std::vector<std::vector<CMat>> & sourceB,
                                const BlockFields * freeFields)
  {
    BlockFields fields(basis.blocks.size());
    for (size_t j = 0; j < basis.blocks.size(); j++) {
      const LiftedBlock & blk = basis.blocks[j];
      fields[j].resize(blk.full.dim());
      for (int g = 0; g < blk.full.dim(); g++) {
        if (g < blk.n_inherited) {
          const GenLabel & lab = blk.labels[g];
          fields[j][g] = phi_block_inject(basis.spec, lab.i, static_cast<int>(j),
                                          lab.ell, sourceB[lab.i][lab.alpha]);
        } else if (freeFields) {
          fields[j][g] = (*freeFields)[j][g - blk.n_inherited];
        } else {
          fields[j][g] = CMat::Zero(blk.m, blk.m);
        }
      }
    }
    return fields;
  }

  ActionCopyReport inherited_action_terms(const LiftedBasis & basis,
                                          const std::vector<std::vector<CMat>> & sourceB)
  {
    const int r = basis.spec.source.rank();
    ActionCopyReport rep;
    rep.source_action.assign(r, 0.0);
    rep.sector_action.assign(r, 0.0);
    rep.weight.assign(r, 0.0);

    // source actions
    for (int i = 0; i < r; i++) {
      const SlBasis & sb = basis.source[i];
      for (int a1 = 0; a1 < sb.dim(); a1++) {
        for (int a2 = a1 + 1; a2 < sb.dim(); a2++) {
          CMat theta = -(sourceB[i][a1] * sourceB[i][a2] - sourceB[i][a2] * sourceB[i][a1]);
          for (int a3 = 0; a3 < sb.dim(); a3++) {
            double c = sb.C[a3](a1, a2);
            if (c != 0.0) theta += c * sourceB[i][a3];
          }
          rep.source_action[i] += theta.squaredNorm();
        }
      }
    }

    // target J^phi sector (free fields do not enter: the structure constants
    // close on J^phi there)
    BlockFields fields = compatible_fields(basis, sourceB);
    CurvatureTensor theta = curvature_components(basis, fields);
    for (size_t j = 0; j < basis.blocks.size(); j++) {
      const LiftedBlock & blk = basis.blocks[j];
      const int d = blk.full.dim();
      for (int b1 = 0; b1 < blk.n_inherited; b1++) {
        for (int b2 = b1 + 1; b2 < blk.n_inherited; b2++) {
          double val = theta.pairs[j][CurvatureTensor::pair_index(d, b1, b2)].squaredNorm();
          if (val != 0.0) rep.sector_action[blk.labels[b1].i] += val;
        }
      }
    }
    for (int i = 0; i < r; i++) {
      rep.weight[i] = (rep.source_action[i] > 1e-14)
                          ? rep.sector_action[i] / rep.source_action[i] : 0.0;
    }
    return rep;
  }

}
