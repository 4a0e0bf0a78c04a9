#include "ncgft/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ncgft
{

  namespace
  {

    /// Sorts idx ascending; returns the permutation sign, or 0 on repeats.
    int sort_with_sign(std::vector<int> & idx)
    {
      int sign = 1;
      // insertion sort, counting transpositions (indices are tiny)
      for (size_t k = 1; k < idx.size(); k++) {
        int v = idx[k];
        size_t pos = k;
        while (pos > 0 && idx[pos - 1] > v) {
          idx[pos] = idx[pos - 1];
          pos--;
          sign = -sign;
        }
        idx[pos] = v;
      }
      for (size_t k = 1; k < idx.size(); k++) {
        if (idx[k] == idx[k - 1]) return 0;
      }
      return sign;
    }

    /// Sign of the shuffle merging two disjoint sorted index sets
    /// (concatenation (a,b) relative to the sorted merge).
    int shuffle_sign(const std::vector<int> & a, const std::vector<int> & b)
    {
      int inversions = 0;
      for (int x : a) {
        for (int y : b) {
          if (x > y) inversions++;
        }
      }
      return (inversions % 2 == 0) ? 1 : -1;
    }

    void for_each_sorted_subset(int d, int p,
                                const std::function<void(const std::vector<int> &)> & fn)
    {
      if (p > d) return;
      std::vector<int> idx(p);
      for (int k = 0; k < p; k++) idx[k] = k;
      while (true) {
        fn(idx);
        int k = p - 1;
        while (k >= 0 && idx[k] == d - p + k) k--;
        if (k < 0) break;
        idx[k]++;
        for (int t = k + 1; t < p; t++) idx[t] = idx[t - 1] + 1;
      }
    }

    void require_diag_gram(const RMat & g, const char * who)
    {
      RMat off = g;
      off.diagonal().setZero();
      if (off.cwiseAbs().maxCoeff() > 1e-10) {
        throw std::runtime_error(std::string(who) + ": non-diagonal Gram metric not supported");
      }
    }

    double sqrt_abs_det(const RMat & g)
    {
      return std::sqrt(std::abs(g.determinant()));
    }

    void require_same_calc(const Form & a, const Form & b, const char * who)
    {
      if (!a.calc() || !b.calc() || !(a.calc()->profile() == b.calc()->profile())) {
        throw std::invalid_argument(std::string(who) + ": algebra profile mismatch");
      }
    }

    void require_unitary(const BlockElement & u, const AlgebraProfile & profile,
                         const char * who)
    {
      if (static_cast<int>(u.size()) != profile.rank()) {
        throw std::invalid_argument(std::string(who) + ": wrong number of blocks");
      }
      for (int i = 0; i < profile.rank(); i++) {
        const int n = profile.dims[i];
        if (u[i].rows() != n || u[i].cols() != n
            || (u[i] * u[i].adjoint() - CMat::Identity(n, n)).norm() > 1e-10) {
          throw std::invalid_argument(std::string(who) + ": invalid gauge element (not unitary)");
        }
      }
    }

  }

  AlgebraProfile DerivationCalculus::profile() const
  {
    AlgebraProfile p;
    for (const SlBasis & b : blocks) p.dims.push_back(b.n);
    return p;
  }

  CalcPtr standard_calculus(const AlgebraProfile & profile)
  {
    auto calc = std::make_shared<DerivationCalculus>();
    for (int n : profile.dims) calc->blocks.push_back(gellmann_basis(n));
    return calc;
  }

  Form::Form(CalcPtr calc)
    : calc_(std::move(calc)), comp_(calc_->blocks.size())
  {}

  void Form::add_component(int block, std::vector<int> idx, const CMat & c)
  {
    int sign = sort_with_sign(idx);
    if (sign == 0) return;
    auto it = comp_[block].find(idx);
    if (it == comp_[block].end()) {
      comp_[block].emplace(std::move(idx), double(sign) * c);
    } else {
      it->second += double(sign) * c;
    }
  }

  CMat Form::component(int block, std::vector<int> idx) const
  {
    const int n = calc_->blocks[block].n;
    int sign = sort_with_sign(idx);
    if (sign != 0) {
      auto it = comp_[block].find(idx);
      if (it != comp_[block].end()) return double(sign) * it->second;
    }
    return CMat::Zero(n, n);
  }

  int Form::degree(int block) const
  {
    int deg = -1;
    for (const auto & [idx, c] : comp_[block]) {
      if (c.cwiseAbs().maxCoeff() == 0.0) continue;
      int p = static_cast<int>(idx.size());
      if (deg == -1) deg = p;
      else if (deg != p) throw std::runtime_error("Form::degree: inhomogeneous block content");
    }
    return deg;
  }

  bool Form::is_zero(double tol) const
  {
    for (const auto & block : comp_) {
      for (const auto & [idx, c] : block) {
        if (c.cwiseAbs().maxCoeff() > tol) return false;
      }
    }
    return true;
  }

  void Form::prune(double tol)
  {
    for (auto & block : comp_) {
      for (auto it = block.begin(); it != block.end();) {
        if (it->second.cwiseAbs().maxCoeff() <= tol) it = block.erase(it);
        else ++it;
      }
    }
  }

  Form & Form::operator+=(const Form & other)
  {
    require_same_calc(*this, other, "Form::operator+=");
    for (int i = 0; i < nblocks(); i++) {
      for (const auto & [idx, c] : other.comp_[i]) {
        auto it = comp_[i].find(idx);
        if (it == comp_[i].end()) comp_[i].emplace(idx, c);
        else it->second += c;
      }
    }
    return *this;
  }

  Form & Form::operator-=(const Form & other)
  {
    require_same_calc(*this, other, "Form::operator-=");
    for (int i = 0; i < nblocks(); i++) {
      for (const auto & [idx, c] : other.comp_[i]) {
        auto it = comp_[i].find(idx);
        if (it == comp_[i].end()) comp_[i].emplace(idx, -c);
        else it->second -= c;
      }
    }
    return *this;
  }

  Form & Form::operator*=(cplx scalar)
  {
    for (auto & block : comp_) {
      for (auto & [idx, c] : block) c *= scalar;
    }
    return *this;
  }

  Form operator+(Form a, const Form & b) { a += b; return a; }
  Form operator-(Form a, const Form & b) { a -= b; return a; }
  Form operator*(cplx scalar, Form a) { a *= scalar; return a; }

  Form scalar_form(CalcPtr calc, const BlockElement & a)
  {
    Form f(calc);
    for (int i = 0; i < f.nblocks(); i++) {
      f.add_component(i, {}, a[i]);
    }
    return f;
  }

  Form theta(CalcPtr calc, int block, int alpha)
  {
    Form f(calc);
    const int n = calc->blocks[block].n;
    f.add_component(block, {alpha}, CMat::Identity(n, n));
    return f;
  }

  Form volume_form(CalcPtr calc)
  {
    Form f(calc);
    for (size_t i = 0; i < calc->blocks.size(); i++) {
      const SlBasis & b = calc->blocks[i];
      std::vector<int> top(b.dim());
      for (int k = 0; k < b.dim(); k++) top[k] = k;
      f.add_component(static_cast<int>(i), top,
                      sqrt_abs_det(b.gram) * CMat::Identity(b.n, b.n));
    }
    return f;
  }

  Form wedge(const Form & a, const Form & b)
  {
    require_same_calc(a, b, "wedge");
    Form out(a.calc());
    for (int i = 0; i < a.nblocks(); i++) {
      for (const auto & [ja, ca] : a.components(i)) {
        for (const auto & [jb, cb] : b.components(i)) {
          bool disjoint = true;
          for (int x : ja) {
            if (std::binary_search(jb.begin(), jb.end(), x)) { disjoint = false; break; }
          }
          if (!disjoint) continue;
          std::vector<int> merged;
          merged.reserve(ja.size() + jb.size());
          std::merge(ja.begin(), ja.end(), jb.begin(), jb.end(), std::back_inserter(merged));
          out.add_component(i, std::move(merged),
                            double(shuffle_sign(ja, jb)) * (ca * cb));
        }
      }
    }
    out.prune(0.0);
    return out;
  }

  Form koszul_d(const Form & omega)
  {
    Form out(omega.calc());
    for (int i = 0; i < omega.nblocks(); i++) {
      const SlBasis & basis = omega.calc()->blocks[i];
      const int d = basis.dim();
      // group source components by degree
      std::vector<int> degrees;
      for (const auto & [idx, c] : omega.components(i)) {
        int p = static_cast<int>(idx.size());
        if (std::find(degrees.begin(), degrees.end(), p) == degrees.end()) degrees.push_back(p);
      }
      for (int p : degrees) {
        for_each_sorted_subset(d, p + 1, [&](const std::vector<int> & T) {
          CMat acc = CMat::Zero(basis.n, basis.n);
          bool nonzero = false;
          std::vector<int> rest(p);
          for (int k = 0; k <= p; k++) {
            for (int t = 0, w = 0; t <= p; t++) {
              if (t != k) rest[w++] = T[t];
            }
            double sk = (k % 2 == 0) ? 1.0 : -1.0;
            CMat wk = omega.component(i, rest);
            if (wk.cwiseAbs().maxCoeff() != 0.0) {
              acc += sk * commutator(basis.E[T[k]], wk);
              nonzero = true;
            }
          }
          std::vector<int> rest2(p - 1 >= 0 ? p - 1 : 0);
          for (int k = 0; k <= p; k++) {
            for (int l = k + 1; l <= p; l++) {
              double skl = ((k + l) % 2 == 0) ? 1.0 : -1.0;
              for (int t = 0, w = 0; t <= p; t++) {
                if (t != k && t != l) rest2[w++] = T[t];
              }
              for (int g = 0; g < d; g++) {
                double cval = basis.C[g](T[k], T[l]);
                if (cval == 0.0) continue;
                std::vector<int> src;
                src.reserve(p);
                src.push_back(g);
                src.insert(src.end(), rest2.begin(), rest2.end());
                CMat wg = omega.component(i, std::move(src));
                if (wg.cwiseAbs().maxCoeff() != 0.0) {
                  acc += skl * cval * wg;
                  nonzero = true;
                }
              }
            }
          }
          if (nonzero) {
            std::vector<int> key = T;
            out.add_component(i, std::move(key), acc);
          }
        });
      }
    }
    out.prune(0.0);
    return out;
  }

  Form hodge_star(const Form & omega)
  {
    Form out(omega.calc());
    for (int i = 0; i < omega.nblocks(); i++) {
      const SlBasis & basis = omega.calc()->blocks[i];
      const int d = basis.dim();
      if (!omega.components(i).empty() && d > 8) {
        throw std::runtime_error("hodge_star: derivation dimension above materialization cap; "
                                 "use scalar_product instead");
      }
      require_diag_gram(basis.gram, "hodge_star");
      const double sg = sqrt_abs_det(basis.gram);
      for (const auto & [J, c] : omega.components(i)) {
        std::vector<int> K;
        K.reserve(d - J.size());
        for (int t = 0; t < d; t++) {
          if (!std::binary_search(J.begin(), J.end(), t)) K.push_back(t);
        }
        // epsilon_{J,K} relative to (0,..,d-1) is the shuffle sign
        double factor = sg * shuffle_sign(J, K);
        for (int j : J) factor /= basis.gram(j, j);
        out.add_component(i, std::move(K), factor * c);
      }
    }
    out.prune(0.0);
    return out;
  }

  cplx integral(const Form & omega)
  {
    cplx total = 0.0;
    for (int i = 0; i < omega.nblocks(); i++) {
      const SlBasis & basis = omega.calc()->blocks[i];
      const int d = basis.dim();
      for (const auto & [idx, c] : omega.components(i)) {
        if (static_cast<int>(idx.size()) == d) {
          total += c.trace() / sqrt_abs_det(basis.gram);
        }
      }
    }
    return total;
  }

  cplx scalar_product(const Form & omega, const Form & omegap)
  {
    require_same_calc(omega, omegap, "scalar_product");
    cplx total = 0.0;
    for (int i = 0; i < omega.nblocks(); i++) {
      const SlBasis & basis = omega.calc()->blocks[i];
      require_diag_gram(basis.gram, "scalar_product");
      int p1 = omega.degree(i);
      int p2 = omegap.degree(i);
      if (p1 == -1 || p2 == -1) continue;
      if (p1 != p2) throw std::invalid_argument("scalar_product: degree mismatch");
      for (const auto & [J, c] : omega.components(i)) {
        CMat cp = omegap.component(i, J);
        if (cp.cwiseAbs().maxCoeff() == 0.0) continue;
        double factor = 1.0;
        for (int j : J) factor /= basis.gram(j, j);
        total += factor * (c * cp).trace();
      }
    }
    return total;
  }

  Form transport_form(const Form & omega, const BlockElement & u)
  {
    require_unitary(u, omega.calc()->profile(), "transport_form");
    Form out(omega.calc());
    for (int i = 0; i < omega.nblocks(); i++) {
      const SlBasis & basis = omega.calc()->blocks[i];
      const int d = basis.dim();
      if (omega.components(i).empty()) continue;
      // U_alpha^beta from u^-1 E_alpha u = U_alpha^beta E_beta
      RMat U(d, d);
      Eigen::FullPivLU<RMat> lu(basis.gram);
      CMat uinv = u[i].adjoint();
      for (int a = 0; a < d; a++) {
        CMat rot = uinv * basis.E[a] * u[i];
        RVec t(d);
        for (int e = 0; e < d; e++) t(e) = (basis.E[e] * rot).trace().real();
        U.row(a) = lu.solve(t).transpose();
      }
      // group source keys by degree for the determinant expansion
      std::vector<std::vector<const std::vector<int> *>> keys_by_degree(d + 1);
      for (const auto & [J, c] : omega.components(i)) {
        keys_by_degree[J.size()].push_back(&J);
      }
      for (int p = 0; p <= d; p++) {
        if (keys_by_degree[p].empty()) continue;
        for_each_sorted_subset(d, p, [&](const std::vector<int> & A) {
          CMat acc = CMat::Zero(basis.n, basis.n);
          bool nonzero = false;
          for (const std::vector<int> * B : keys_by_degree[p]) {
            RMat sub(p, p);
            for (int rr = 0; rr < p; rr++) {
              for (int cc = 0; cc < p; cc++) sub(rr, cc) = U(A[rr], (*B)[cc]);
            }
            double det = (p == 0) ? 1.0 : sub.determinant();
            if (det != 0.0) {
              acc += det * omega.components(i).at(*B);
              nonzero = true;
            }
          }
          if (nonzero) {
            std::vector<int> key = A;
            out.add_component(i, std::move(key), u[i] * acc * uinv);
          }
        });
      }
    }
    out.prune();
    return out;
  }

  Form connection_transform(const Form & omega, const BlockElement & u)
  {
    require_unitary(u, omega.calc()->profile(), "connection_transform");
    Form out(omega.calc());
    for (int i = 0; i < omega.nblocks(); i++) {
      const SlBasis & basis = omega.calc()->blocks[i];
      CMat uinv = u[i].adjoint();
      for (int a = 0; a < basis.dim(); a++) {
        CMat wa = omega.component(i, {a});
        CMat trans = uinv * wa * u[i] - uinv * commutator(basis.E[a], u[i]);
        out.add_component(i, {a}, trans);
      }
    }
    out.prune();
    return out;
  }

  Form curvature_form(const Form & omega)
  {
    return koszul_d(omega) - wedge(omega, omega);
  }

}
