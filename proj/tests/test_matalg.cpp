#include "ncgft/matalg.hpp"

#include <doctest.h>

#include <cmath>

using namespace ncgft;

TEST_CASE("gellmann_basis: normalization and shape")
{
  for (int n = 2; n <= 5; n++) {
    SlBasis b = gellmann_basis(n);
    CHECK(b.n == n);
    CHECK(b.dim() == n * n - 1);
    for (const CMat & E : b.E) {
      CHECK(std::abs(E.trace()) < 1e-14);
      CHECK(is_antihermitian(E));
    }
    // gram = -identity
    RMat dev = b.gram + RMat::Identity(b.dim(), b.dim());
    CHECK(dev.cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("gellmann_basis: sl(2) ordering and structure constants")
{
  SlBasis b = gellmann_basis(2);
  const double s = 1.0 / std::sqrt(2.0);
  // E_0 = i(e_01+e_10)/sqrt2, E_1 = (e_01-e_10)/sqrt2, E_2 = i diag(1,-1)/sqrt2
  CHECK(b.E[0](0, 1) == cplx(0, s));
  CHECK(b.E[0](1, 0) == cplx(0, s));
  CHECK(b.E[1](0, 1) == cplx(s, 0));
  CHECK(b.E[1](1, 0) == cplx(-s, 0));
  CHECK(b.E[2](0, 0) == cplx(0, s));
  CHECK(b.E[2](1, 1) == cplx(0, -s));
  CHECK(b.C[2](0, 1) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(b.C[2](1, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("gellmann_basis: sl(3) structure constants against frozen values")
{
  SlBasis b = gellmann_basis(3);
  const double h = std::sqrt(0.5);
  struct Entry { int c, a, b; double v; };
  // all nonzero C^c_ab with a < b
  const Entry expected[] = {
      {0, 1, 6, -std::sqrt(2.0)}, {0, 2, 5, -h}, {0, 3, 4, h},
      {1, 0, 6, std::sqrt(2.0)},  {1, 2, 4, -h}, {1, 3, 5, -h},
      {2, 0, 5, h},  {2, 1, 4, h},  {2, 3, 6, -h}, {2, 3, 7, -1.22474487139159},
      {3, 0, 4, -h}, {3, 1, 5, h},  {3, 2, 6, h},  {3, 2, 7, 1.22474487139159},
      {4, 0, 3, h},  {4, 1, 2, -h}, {4, 5, 6, h},  {4, 5, 7, -1.22474487139159},
      {5, 0, 2, -h}, {5, 1, 3, -h}, {5, 4, 6, -h}, {5, 4, 7, 1.22474487139159},
      {6, 0, 1, -std::sqrt(2.0)},  {6, 2, 3, -h}, {6, 4, 5, h},
      {7, 2, 3, -1.22474487139159}, {7, 4, 5, -1.22474487139159},
  };
  int nonzero = 0;
  for (int c = 0; c < 8; c++) {
    for (int a = 0; a < 8; a++) {
      for (int bb = a + 1; bb < 8; bb++) {
        if (std::abs(b.C[c](a, bb)) > 1e-12) nonzero++;
      }
    }
  }
  CHECK(nonzero == 27);
  for (const Entry & e : expected) {
    CHECK(b.C[e.c](e.a, e.b) == doctest::Approx(e.v).epsilon(1e-12));
    // antisymmetry in the lower indices
    CHECK(b.C[e.c](e.b, e.a) == doctest::Approx(-e.v).epsilon(1e-12));
  }
}

TEST_CASE("structure constants: Killing sum and residuals")
{
  for (int n = 2; n <= 5; n++) {
    SlBasis b = gellmann_basis(n);
    double sum2 = 0;
    for (const RMat & Cc : b.C) sum2 += Cc.squaredNorm();
    // sum_{abc} (C^c_ab)^2 = 2n(n^2-1) for this normalization
    CHECK(sum2 == doctest::Approx(2.0 * n * (n * n - 1)).epsilon(1e-10));
    CHECK(reconstruction_residual(b) < 1e-12);
    CHECK(jacobi_residual(b) < 1e-10);
  }
}

TEST_CASE("make_sl_basis validates input")
{
  // non-traceless generator
  std::vector<CMat> gens{CMat::Identity(2, 2) * cplx(0, 1)};
  CHECK_THROWS(make_sl_basis(2, gens));
  // non-anti-Hermitian generator
  CMat h = CMat::Zero(2, 2);
  h(0, 1) = 1;
  CHECK_THROWS(make_sl_basis(2, {h}));
  // a valid sub-family works and reproduces its closed structure constants
  SlBasis full = gellmann_basis(2);
  SlBasis sub = make_sl_basis(2, {full.E[0], full.E[1], full.E[2]});
  CHECK(reconstruction_residual(sub) < 1e-13);
}

TEST_CASE("frobenius and commutator")
{
  SlBasis b = gellmann_basis(3);
  // <E_a, E_b> = tr(E_a^dag E_b) = -tr(E_a E_b) = delta_ab
  for (int a = 0; a < b.dim(); a++) {
    for (int c = 0; c < b.dim(); c++) {
      double expect = (a == c) ? 1.0 : 0.0;
      CHECK(std::abs(frobenius(b.E[a], b.E[c]) - cplx(expect, 0)) < 1e-13);
    }
  }
  CMat com = commutator(b.E[0], b.E[1]);
  CHECK(is_antihermitian(com));
  CHECK(std::abs(com.trace()) < 1e-14);
}
