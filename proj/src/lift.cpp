#include "ncgft/lift.hpp"

#include <cmath>
#include <stdexcept>

namespace ncgft
{

  namespace
  {

    const cplx I(0.0, 1.0);

    struct Range { int off; int len; int summand; };  // summand = -1 for pad

    /// Enveloping-block diagonal ranges of target block j, pad last
    std::vector<Range> envelope_ranges(const EmbeddingSpec & spec, int j)
    {
      std::vector<Range> out;
      for (int i = 0; i < spec.source.rank(); i++) {
        if (spec.mult[j][i] > 0) {
          out.push_back({spec.slot_offset(j, i, 0),
                         spec.mult[j][i] * spec.source.dims[i], i});
        }
      }
      if (spec.pad[j] > 0) {
        out.push_back({spec.pad_offset(j), spec.pad[j], -1});
      }
      return out;
    }

    /// Anti-Hermitian pair at one off-diagonal position
    void push_offdiag_pair(std::vector<CMat> & raw, std::vector<GenLabel> & labels,
                           int m, int p, int q, Family fam)
    {
      const double s = 1.0 / std::sqrt(2.0);
      CMat X = CMat::Zero(m, m);
      X(p, q) = I * s;
      X(q, p) = I * s;
      CMat Y = CMat::Zero(m, m);
      Y(p, q) = s;
      Y(q, p) = -s;
      GenLabel lab;
      lab.family = static_cast<int>(fam);
      raw.push_back(std::move(X));
      labels.push_back(lab);
      raw.push_back(std::move(Y));
      labels.push_back(lab);
    }

    /// Identity of the ell-th copy slot of summand i (or of the pad for i=-1)
    CMat slot_identity(const EmbeddingSpec & spec, int j, int i, int ell)
    {
      const int m = spec.target.dims[j];
      CMat P = CMat::Zero(m, m);
      int off, len;
      if (i < 0) {
        off = spec.pad_offset(j);
        len = spec.pad[j];
      } else {
        off = spec.slot_offset(j, i, ell);
        len = spec.source.dims[i];
      }
      for (int t = 0; t < len; t++) P(off + t, off + t) = 1.0;
      return P;
    }

  }

  std::string GenLabel::class_string() const
  {
    switch (cls) {
      case 'a': return "a" + std::to_string(cls_i + 1);
      case 'c': return "c" + std::to_string(cls_i + 1);
      case 'b': case 'd': case 'e': return std::string(1, cls);
      default: return "?";
    }
  }

  CalcPtr LiftedBasis::target_calculus() const
  {
    auto calc = std::make_shared<DerivationCalculus>();
    for (const LiftedBlock & b : blocks) calc->blocks.push_back(b.full);
    return calc;
  }

  LiftedBasis build_lifted_basis(const EmbeddingSpec & spec,
                                 const std::vector<SlBasis> & sourceBases)
  {
    const int r = spec.source.rank();
    if (static_cast<int>(sourceBases.size()) != r) {
      throw std::invalid_argument("build_lifted_basis: one source basis per summand required");
    }
    for (int i = 0; i < r; i++) {
      if (sourceBases[i].n != spec.source.dims[i]) {
        throw std::invalid_argument("build_lifted_basis: source basis size mismatch");
      }
      RMat dev = sourceBases[i].gram + RMat::Identity(sourceBases[i].dim(), sourceBases[i].dim());
      if (dev.cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("build_lifted_basis: source basis not orthonormal");
      }
    }

    LiftedBasis out;
    out.spec = spec;
    out.source = sourceBases;

    for (int j = 0; j < spec.target.rank(); j++) {
      const int m = spec.target.dims[j];
      LiftedBlock block;
      block.m = m;

      std::vector<CMat> gens;
      gens.reserve(m * m - 1);

      // inherited family J^phi, triples (i, ell, alpha) in lex order
      for (int i = 0; i < r; i++) {
        for (int ell = 0; ell < spec.mult[j][i]; ell++) {
          for (int a = 0; a < sourceBases[i].dim(); a++) {
            gens.push_back(phi_block_inject(spec, i, j, ell, sourceBases[i].E[a]));
            GenLabel lab;
            lab.inherited = true;
            lab.i = i;
            lab.ell = ell;
            lab.alpha = a;
            block.labels.push_back(lab);
          }
        }
      }
      block.n_inherited = static_cast<int>(gens.size());

      // complement families, raw (orthonormalized below)
      std::vector<CMat> raw;
      std::vector<GenLabel> rawLabels;

      // family 1: traceless generators of the pad block
      if (spec.pad[j] >= 2) {
        SlBasis padBasis = gellmann_basis(spec.pad[j]);
        const int off = spec.pad_offset(j);
        for (const CMat & E : padBasis.E) {
          CMat X = CMat::Zero(m, m);
          X.block(off, off, spec.pad[j], spec.pad[j]) = E;
          GenLabel lab;
          lab.family = static_cast<int>(Family::PadBlock);
          raw.push_back(std::move(X));
          rawLabels.push_back(lab);
        }
      }

      // family 2: off-diagonal pairs between distinct enveloping blocks
      const std::vector<Range> env = envelope_ranges(spec, j);
      for (size_t s = 0; s < env.size(); s++) {
        for (size_t t = s + 1; t < env.size(); t++) {
          for (int p = env[s].off; p < env[s].off + env[s].len; p++) {
            for (int q = env[t].off; q < env[t].off + env[t].len; q++) {
              push_offdiag_pair(raw, rawLabels, m, p, q, Family::OffEnvelope);
            }
          }
        }
      }

      // family 3: off-diagonal pairs between copy slots of one summand
      for (int i = 0; i < r; i++) {
        const int n = spec.source.dims[i];
        for (int l1 = 0; l1 < spec.mult[j][i]; l1++) {
          for (int l2 = l1 + 1; l2 < spec.mult[j][i]; l2++) {
            const int o1 = spec.slot_offset(j, i, l1);
            const int o2 = spec.slot_offset(j, i, l2);
            for (int p = 0; p < n; p++) {
              for (int q = 0; q < n; q++) {
                push_offdiag_pair(raw, rawLabels, m, o1 + p, o2 + q,
                                  Family::IntraEnvelopeOffdiag);
              }
            }
          }
        }
      }

      // family 4: diagonal differences of consecutive copy identities
      for (int i = 0; i < r; i++) {
        for (int ell = 0; ell + 1 < spec.mult[j][i]; ell++) {
          CMat D = I * (slot_identity(spec, j, i, ell) - slot_identity(spec, j, i, ell + 1));
          GenLabel lab;
          lab.family = static_cast<int>(Family::CopyDifference);
          raw.push_back(std::move(D));
          rawLabels.push_back(lab);
        }
      }

      // family 5: traceless diagonal across consecutive enveloping blocks
      // (real blocks first, pad pseudo-block last); uses the first copy slot
      {
        std::vector<Range> chain;
        std::vector<int> sizes;
        for (const Range & rg : env) {
          chain.push_back(rg);
          sizes.push_back(rg.summand >= 0 ? spec.source.dims[rg.summand] : spec.pad[j]);
        }
        for (size_t k = 0; k + 1 < chain.size(); k++) {
          CMat Ek = slot_identity(spec, j, chain[k].summand, 0);
          CMat Ek1 = slot_identity(spec, j, chain[k + 1].summand, 0);
          CMat D = I * (static_cast<double>(sizes[k + 1]) * Ek
                        - static_cast<double>(sizes[k]) * Ek1);
          GenLabel lab;
          lab.family = static_cast<int>(Family::CrossEnvelopeDiagonal);
          raw.push_back(std::move(D));
          rawLabels.push_back(lab);
        }
      }

      // Gram-Schmidt of the complement against J^phi and itself
      for (size_t k = 0; k < raw.size(); k++) {
        CMat v = raw[k];
        for (const CMat & w : gens) {
          cplx proj = frobenius(w, v);
          v -= proj * w;
        }
        double norm = std::sqrt(frobenius(v, v).real());
        if (norm < 1e-10) {
          throw std::runtime_error("build_lifted_basis: degenerate complement vector");
        }
        v /= norm;
        gens.push_back(std::move(v));
        block.labels.push_back(rawLabels[k]);
        block.family_counts[rawLabels[k].family]++;
      }

      if (static_cast<int>(gens.size()) != m * m - 1) {
        throw std::runtime_error("build_lifted_basis: complement count mismatch");
      }

      block.full = make_sl_basis(m, std::move(gens));
      if (spec.target.rank() == 1) {
        block.labels = classify_directions(block, spec);
      }
      out.blocks.push_back(std::move(block));
    }
    return out;
  }

  std::vector<GenLabel> classify_directions(const LiftedBlock & block,
                                            const EmbeddingSpec & spec)
  {
    if (spec.target.rank() != 1) {
      throw std::invalid_argument("classify_directions: only single-block targets supported");
    }
    const int j = 0;
    const int m = block.m;
    const int envEnd = spec.pad_offset(j);  // envelope = [0, envEnd)
    std::vector<GenLabel> labels = block.labels;

    for (int g = 0; g < block.full.dim(); g++) {
      GenLabel & lab = labels[g];
      if (lab.inherited) {
        lab.cls = 'a';
        lab.cls_i = lab.i;
        continue;
      }
      const CMat & E = block.full.E[g];
      bool diagonal = true;
      bool outside = false;
      for (int p = 0; p < m; p++) {
        for (int q = 0; q < m; q++) {
          if (std::abs(E(p, q)) <= 1e-12) continue;
          if (p != q) diagonal = false;
          if (p >= envEnd || q >= envEnd) outside = true;
        }
      }
      if (diagonal) {
        lab.cls = outside ? 'e' : 'd';
        lab.cls_i = -1;
        continue;
      }
      if (!outside) {
        lab.cls = 'b';
        lab.cls_i = -1;
        continue;
      }
      // off-diagonal with support outside the envelope: c(i) when the rows
      // or columns meet exactly one summand's enveloping block, e otherwise
      int touched = -1;
      int count = 0;
      for (int i = 0; i < spec.source.rank(); i++) {
        if (spec.mult[j][i] == 0) continue;
        const int off = spec.slot_offset(j, i, 0);
        const int len = spec.mult[j][i] * spec.source.dims[i];
        bool hit = false;
        for (int p = off; p < off + len && !hit; p++) {
          for (int q = 0; q < m; q++) {
            if (std::abs(E(p, q)) > 1e-12 || std::abs(E(q, p)) > 1e-12) { hit = true; break; }
          }
        }
        if (hit) { touched = i; count++; }
      }
      if (count == 1) {
        lab.cls = 'c';
        lab.cls_i = touched;
      } else {
        lab.cls = 'e';
        lab.cls_i = -1;
      }
    }
    return labels;
  }

  DofCounts dof_counts(const LiftedBasis & basis)
  {
    DofCounts out;
    for (const LiftedBlock & b : basis.blocks) {
      out.n_idof += b.n_inherited;
      out.n_ndof += b.full.dim() - b.n_inherited;
    }
    if (out.n_idof == 0) {
      throw std::runtime_error("dof_counts: no inherited degrees of freedom (undefined ratio)");
    }
    out.r_dof = static_cast<double>(out.n_ndof) / out.n_idof;
    return out;
  }

}
