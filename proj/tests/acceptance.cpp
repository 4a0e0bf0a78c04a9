// Acceptance suite: one numbered criterion per invocation (--criterion N),
// each printing a single [PASS]/[FAIL] line. Exit code 0 iff all checks of
// the selected criterion hold.

#include "ncgft/config.hpp"
#include "ncgft/forms.hpp"
#include "ncgft/gauge.hpp"
#include "ncgft/lift.hpp"
#include "ncgft/matalg.hpp"
#include "ncgft/ssbm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ncgft;

namespace
{

  bool g_ok = true;
  std::vector<std::string> g_notes;

  void require(bool cond, const std::string & what)
  {
    if (!cond) {
      g_ok = false;
      g_notes.push_back(what);
    }
  }

  CMat random_matrix(int n, std::mt19937 & rng)
  {
    std::normal_distribution<double> dist;
    CMat M(n, n);
    for (int p = 0; p < n; p++) {
      for (int q = 0; q < n; q++) M(p, q) = cplx(dist(rng), dist(rng));
    }
    return M;
  }

  CMat random_antihermitian(int n, std::mt19937 & rng)
  {
    CMat M = random_matrix(n, rng);
    return (M - M.adjoint()) / 2.0;
  }

  CMat random_unitary(int n, std::mt19937 & rng)
  {
    Eigen::HouseholderQR<CMat> qr(random_matrix(n, rng));
    CMat Q = qr.householderQ();
    return Q;
  }

  LiftedBasis build_case(AlgebraProfile s, AlgebraProfile t,
                         std::vector<std::vector<int>> mult)
  {
    EmbeddingSpec spec = validate_embedding(s, t, mult);
    std::vector<SlBasis> src;
    for (int n : s.dims) src.push_back(gellmann_basis(n));
    return build_lifted_basis(spec, src);
  }

  struct Case
  {
    const char * name;
    AlgebraProfile s, t;
    std::vector<std::vector<int>> mult;
  };

  const Case kCases[] = {
      {"case1", {{2}}, {{3}}, {{1}}},
      {"case2", {{2, 2}}, {{4}}, {{1, 1}}},
      {"case3", {{2, 2}}, {{5}}, {{1, 1}}},
      {"case4", {{2, 3}}, {{5}}, {{1, 1}}},
  };

  Form random_form(CalcPtr calc, int degree, std::mt19937 & rng)
  {
    Form f(calc);
    for (size_t i = 0; i < calc->blocks.size(); i++) {
      const SlBasis & b = calc->blocks[i];
      const int d = b.dim();
      if (degree > d) continue;
      std::vector<int> idx(degree);
      std::function<void(int, int)> rec = [&](int pos, int lo) {
        if (pos == degree) {
          if (rng() % 2 == 0) {
            f.add_component(static_cast<int>(i), idx, random_matrix(b.n, rng));
          }
          return;
        }
        for (int k = lo; k < d; k++) {
          idx[pos] = k;
          rec(pos + 1, k + 1);
        }
      };
      rec(0, 0);
      if (f.components(static_cast<int>(i)).empty()) {
        for (int k = 0; k < degree; k++) idx[k] = k;
        f.add_component(static_cast<int>(i), idx, random_matrix(b.n, rng));
      }
    }
    return f;
  }

  double max_norm(const Form & f)
  {
    double worst = 0.0;
    for (int i = 0; i < f.nblocks(); i++) {
      for (const auto & [idx, c] : f.components(i)) {
        worst = std::max(worst, c.cwiseAbs().maxCoeff());
      }
    }
    return worst;
  }

  MinOptions scan_opts(std::uint64_t seed = 1)
  {
    MinOptions o;
    o.seed = seed;
    o.threads = 4;
    return o;
  }

  // massive-cluster degeneracies (masses > 1e-6), ascending
  std::vector<int> massive_pattern(const MassSpectrum & sp)
  {
    std::vector<int> pat;
    for (const MassCluster & c : sp.clusters) {
      if (c.mass > 1e-6) pat.push_back(c.degeneracy);
    }
    std::sort(pat.begin(), pat.end());
    return pat;
  }

  double cluster_mass(const MassSpectrum & sp, const std::string & label)
  {
    for (const MassCluster & c : sp.clusters) {
      if (c.label == label && c.mass > 1e-6) return c.mass;
    }
    return std::nan("");
  }

  // least-squares slope through the origin
  double origin_slope(const std::vector<double> & x, const std::vector<double> & y)
  {
    double num = 0, den = 0;
    for (size_t k = 0; k < x.size(); k++) {
      num += x[k] * y[k];
      den += x[k] * x[k];
    }
    return num / den;
  }

  ScanResult diagonal_scan(const Case & c, const MinOptions & opts)
  {
    LiftedBasis basis = build_case(c.s, c.t, c.mult);
    PathSpec path;
    path.kind = PathSpec::Kind::Diagonal;
    path.t0 = -1.0;
    path.t1 = 3.0;
    path.samples = 161;
    return scan_path(basis, path, opts);
  }

  // ---- criteria -----------------------------------------------------------

  void criterion1()
  {
    for (int n = 2; n <= 5; n++) {
      require(jacobi_residual(gellmann_basis(n)) <= 1e-10,
              "jacobi residual sl" + std::to_string(n));
    }
    std::mt19937 rng(11);
    for (int n : {2, 3}) {
      CalcPtr calc = standard_calculus({{n}});
      for (int rep = 0; rep < 50; rep++) {
        int p = rep % 3;
        Form w = random_form(calc, p, rng);
        require(max_norm(koszul_d(koszul_d(w))) <= 1e-11, "d^2 = 0");
        Form v = random_form(calc, 1, rng);
        Form lhs = koszul_d(wedge(w, v));
        Form rhs = wedge(koszul_d(w), v);
        rhs += ((p % 2 == 0) ? 1.0 : -1.0) * wedge(w, koszul_d(v));
        require(max_norm(lhs - rhs) <= 1e-11, "graded Leibniz");
      }
    }
    // orthogonal decomposition of the action integral over the summands
    CalcPtr sum = standard_calculus({{2, 2}});
    CalcPtr single = standard_calculus({{2}});
    for (int rep = 0; rep < 10; rep++) {
      int p = 1 + rep % 2;
      Form w = random_form(sum, p, rng);
      Form v = random_form(sum, p, rng);
      cplx total = scalar_product(w, v);
      cplx parts = 0.0;
      for (int i = 0; i < 2; i++) {
        Form wi(single), vi(single);
        for (const auto & [idx, c] : w.components(i)) wi.add_component(0, idx, c);
        for (const auto & [idx, c] : v.components(i)) vi.add_component(0, idx, c);
        parts += integral(wedge(wi, hodge_star(vi)));
      }
      require(std::abs(total - parts) <= 1e-9, "summand decomposition of the action");
    }
    printf("%s criterion 1: exact algebra suite (Jacobi, d^2, Leibniz, summand "
           "decomposition)\n", g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion2()
  {
    const int expect_idof[] = {3, 6, 6, 11};
    const int expect_ndof[] = {5, 9, 18, 13};
    using Hist = std::map<std::string, int>;
    const Hist expect_classes[] = {
        {{"a1", 3}, {"c1", 4}, {"e", 1}},
        {{"a1", 3}, {"a2", 3}, {"b", 8}, {"d", 1}},
        {{"a1", 3}, {"a2", 3}, {"b", 8}, {"c1", 4}, {"c2", 4}, {"d", 1}, {"e", 1}},
        {{"a1", 3}, {"a2", 8}, {"b", 12}, {"d", 1}},
    };
    for (int k = 0; k < 4; k++) {
      LiftedBasis b = build_case(kCases[k].s, kCases[k].t, kCases[k].mult);
      DofCounts dc = dof_counts(b);
      require(dc.n_idof == expect_idof[k] && dc.n_ndof == expect_ndof[k],
              std::string(kCases[k].name) + " dof counts");
      Hist hist;
      for (const LiftedBlock & blk : b.blocks) {
        for (const GenLabel & l : blk.labels) hist[l.class_string()]++;
      }
      require(hist == expect_classes[k],
              std::string(kCases[k].name) + " class cardinalities");
    }
    printf("%s criterion 2: counting identities and direction-class "
           "cardinalities\n", g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion3()
  {
    for (int n = 2; n <= 5; n++) {
      LiftedBasis b = build_case({{n}}, {{n}}, {{1}});
      MassSpectrum sp = mass_spectrum(mass_form(b, basis_config(b)), probe_labels(b));
      std::vector<double> sorted = sp.masses;
      std::sort(sorted.begin(), sorted.end());
      require(sorted[0] <= 1e-8, "massless trace direction n=" + std::to_string(n));
      for (size_t k = 1; k < sorted.size(); k++) {
        require(std::abs(sorted[k] - std::sqrt(2.0 * n)) <= 1e-8,
                "sl mass sqrt(2n) n=" + std::to_string(n));
      }
    }
    printf("%s criterion 3: basis-configuration masses sqrt(2n) with massless "
           "trace, n=2..5\n", g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion4()
  {
    std::mt19937 rng(4);
    std::normal_distribution<double> dist;
    for (const Case & c : kCases) {
      LiftedBasis b = build_case(c.s, c.t, c.mult);
      const int n = free_dimension(b);
      double worst = 0.0;
      for (int rep = 0; rep < 50; rep++) {
        std::vector<double> lambdas(c.s.rank());
        for (double & l : lambdas) l = dist(rng);
        RVec x(n);
        for (int k = 0; k < n; k++) x(k) = dist(rng);
        FieldConfiguration cfg = unflatten_free(b, lambdas, x);
        RVec g = higgs_gradient(b, cfg);
        const double h = 1e-5;
        // probe a deterministic subset of coordinates per configuration
        for (int j = 0; j < 10; j++) {
          int k = static_cast<int>(rng() % n);
          RVec xp = x, xm = x;
          xp(k) += h;
          xm(k) -= h;
          double fd = (higgs_potential(b, unflatten_free(b, lambdas, xp))
                       - higgs_potential(b, unflatten_free(b, lambdas, xm))) / (2 * h);
          double rel = std::abs(g(k) - fd) / std::max(1.0, std::abs(fd));
          worst = std::max(worst, rel);
        }
      }
      require(worst <= 1e-5, std::string(c.name) + " gradient error "
                                 + std::to_string(worst));
    }
    printf("%s criterion 4: analytic gradient vs central differences, 50 random "
           "configurations per case\n", g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion5()
  {
    std::mt19937 rng(5);
    for (const Case & c : {kCases[0], kCases[3]}) {
      LiftedBasis b = build_case(c.s, c.t, c.mult);
      for (int rep = 0; rep < 10; rep++) {
        std::vector<std::vector<CMat>> sourceB(c.s.rank());
        for (int i = 0; i < c.s.rank(); i++) {
          for (int a = 0; a < c.s.dims[i] * c.s.dims[i] - 1; a++) {
            sourceB[i].push_back(random_antihermitian(c.s.dims[i], rng));
          }
        }
        std::normal_distribution<double> dist;
        RVec x(free_dimension(b));
        for (int k = 0; k < x.size(); k++) x(k) = dist(rng);
        std::vector<double> zeros(c.s.rank(), 0.0);
        BlockFields freef = reconstruct_fields(b, unflatten_free(b, zeros, x));
        BlockFields fields = compatible_fields(b, sourceB, &freef);

        BlockElement u;
        for (int i = 0; i < c.s.rank(); i++) u.push_back(random_unitary(c.s.dims[i], rng));
        BlockFields fieldsU = gauge_transform_fields(b, fields, u);
        std::vector<std::vector<CMat>> sourceBU =
            gauge_transform_source(b.source, sourceB, u);
        BlockFields expect = compatible_fields(b, sourceBU, nullptr);
        double resid = 0.0;
        for (size_t j = 0; j < b.blocks.size(); j++) {
          for (int k = 0; k < b.blocks[j].n_inherited; k++) {
            resid = std::max(resid,
                             (fieldsU[j][k] - expect[j][k]).cwiseAbs().maxCoeff());
          }
        }
        require(resid <= 1e-10, std::string(c.name) + " compatibility preserved");

        MassSpectrum s0 = mass_spectrum(mass_form(b, fields), probe_labels(b));
        MassSpectrum s1 = mass_spectrum(mass_form(b, fieldsU), probe_labels(b));
        double dm = 0.0;
        for (size_t k = 0; k < s0.masses.size(); k++) {
          dm = std::max(dm, std::abs(s0.masses[k] - s1.masses[k]));
        }
        require(dm <= 1e-9, std::string(c.name) + " spectrum invariant");
      }
    }
    printf("%s criterion 5: gauge transformations preserve compatibility and "
           "the sorted mass spectrum (20 random unitaries)\n",
           g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion6()
  {
    std::mt19937 rng(6);
    const Case extra{"alpha2", {{2}}, {{4}}, {{2}}};
    for (const Case & c : {kCases[0], kCases[3], extra}) {
      LiftedBasis b = build_case(c.s, c.t, c.mult);
      for (int rep = 0; rep < 10; rep++) {
        std::vector<std::vector<CMat>> sourceB(c.s.rank());
        for (int i = 0; i < c.s.rank(); i++) {
          for (int a = 0; a < c.s.dims[i] * c.s.dims[i] - 1; a++) {
            sourceB[i].push_back(random_antihermitian(c.s.dims[i], rng));
          }
        }
        ActionCopyReport rep2 = inherited_action_terms(b, sourceB);
        for (int i = 0; i < c.s.rank(); i++) {
          double expect = 0.0;
          for (size_t j = 0; j < b.blocks.size(); j++) expect += b.spec.mult[j][i];
          require(std::abs(rep2.sector_action[i] - expect * rep2.source_action[i])
                      <= 1e-10 * std::max(1.0, std::abs(rep2.source_action[i])),
                  std::string(c.name) + " action copy weight");
        }
      }
    }
    printf("%s criterion 6: inherited-sector action equals multiplicity-weighted "
           "source action (including multiplicity 2)\n", g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion7()
  {
    LiftedBasis basis = build_case(kCases[0].s, kCases[0].t, kCases[0].mult);
    MinOptions opts = scan_opts();
    ScanResult res = diagonal_scan(kCases[0], opts);
    require(static_cast<int>(res.rows.size()) >= 161, "sample count");
    for (const ScanRow & row : res.rows) {
      require(row.min.converged, "row converged at t=" + std::to_string(row.t));
      if (std::abs(row.t) < 1e-9 || std::abs(row.t - 1.0) < 1e-9) {
        require(row.min.V_min <= 1e-8, "V(0)=V(1)=0 endpoint");
      }
    }
    std::vector<double> disc = detect_discontinuities(basis, res, 0.05, opts);
    require(disc.size() == 2, "two discontinuities");
    if (disc.size() == 2) {
      require(std::abs(disc[0] - 0.563) <= 0.02,
              "first transition " + std::to_string(disc[0]));
      require(std::abs(disc[1] - 2.437) <= 0.05,
              "second transition " + std::to_string(disc[1]));
      for (const ScanRow & row : res.rows) {
        if (row.t <= disc[0] || row.t >= disc[1]) continue;
        std::vector<int> pat = massive_pattern(row.spectrum);
        bool ok = (pat == std::vector<int>{1, 3, 4})
                  || (pat == std::vector<int>{8});  // exact merge at lambda = 1
        require(ok, "degeneracy pattern {3,4,1} at t=" + std::to_string(row.t));
      }
    }
    // small-lambda mass slopes of the a1 and c1 clusters
    std::vector<double> xs, ya, yc;
    for (const ScanRow & row : res.rows) {
      if (row.t < 0.05 - 1e-9 || row.t > 0.4 + 1e-9) continue;
      xs.push_back(row.t);
      ya.push_back(cluster_mass(row.spectrum, "a1"));
      yc.push_back(cluster_mass(row.spectrum, "c1"));
    }
    double sa = origin_slope(xs, ya), sc = origin_slope(xs, yc);
    require(std::abs(sa - 2.0) <= 0.04, "a1 slope " + std::to_string(sa));
    require(std::abs(sc - std::sqrt(1.5)) <= 0.02 * std::sqrt(1.5),
            "c1 slope " + std::to_string(sc));
    printf("%s criterion 7: M2->M3 diagonal scan (endpoints, transitions, "
           "slopes, degeneracies)\n", g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion8()
  {
    LiftedBasis basis = build_case(kCases[1].s, kCases[1].t, kCases[1].mult);
    MinOptions opts = scan_opts();
    ScanResult res = diagonal_scan(kCases[1], opts);
    std::vector<double> disc = detect_discontinuities(basis, res, 0.05, opts);
    require(disc.size() == 2, "two discontinuities");
    if (disc.size() == 2) {
      require(std::abs(disc[0] - 0.500) <= 0.02,
              "first transition " + std::to_string(disc[0]));
      require(std::abs(disc[1] - 2.500) <= 0.05,
              "second transition " + std::to_string(disc[1]));
    }

    // spectra along lambda1 + lambda2 = 0.5 are symmetric in the two summands
    PathSpec anti;
    anti.kind = PathSpec::Kind::AntiDiagonal;
    anti.c = 0.5;
    anti.t0 = 0.05;
    anti.t1 = 0.45;
    anti.samples = 17;
    ScanResult ares = scan_path(basis, anti, opts);
    const size_t n = ares.rows.size();
    for (size_t k = 0; k < n / 2; k++) {
      const auto & ma = ares.rows[k].spectrum.masses;
      const auto & mb = ares.rows[n - 1 - k].spectrum.masses;
      double dm = 0.0;
      for (size_t j = 0; j < ma.size(); j++) dm = std::max(dm, std::abs(ma[j] - mb[j]));
      require(dm <= 1e-2, "mirror symmetry at t=" + std::to_string(ares.rows[k].t)
                              + " (diff " + std::to_string(dm) + ")");
    }
    printf("%s criterion 8: M2+M2->M4 diagonal transitions and anti-diagonal "
           "mirror symmetry\n", g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion9()
  {
    double first3 = std::nan(""), first4 = std::nan("");
    {
      LiftedBasis basis = build_case(kCases[2].s, kCases[2].t, kCases[2].mult);
      MinOptions opts = scan_opts();
      ScanResult res = diagonal_scan(kCases[2], opts);
      std::vector<double> disc = detect_discontinuities(basis, res, 0.05, opts);
      require(!disc.empty(), "case3 transition found");
      if (!disc.empty()) first3 = disc[0];
      require(!disc.empty() && std::abs(disc[0] - 0.561) <= 0.03,
              "case3 first transition " + std::to_string(first3));
    }
    {
      LiftedBasis basis = build_case(kCases[3].s, kCases[3].t, kCases[3].mult);
      MinOptions opts = scan_opts();
      ScanResult res = diagonal_scan(kCases[3], opts);
      std::vector<double> disc = detect_discontinuities(basis, res, 0.05, opts);
      require(!disc.empty(), "case4 transition found");
      if (!disc.empty()) first4 = disc[0];
      require(!disc.empty() && std::abs(disc[0] - 0.475) <= 0.02,
              "case4 first transition " + std::to_string(first4));
    }
    // ordering with the dof ratio: case4 (13/11) < case2 (3/2) < case1 (5/3)
    // < case3 (3). The reference first-transition values for cases 1 and 2
    // are 0.5626 and 0.5000; the trend is monotone within a 2e-3 slack that
    // absorbs the near-tie between cases 1 and 3.
    const double slack = 2e-3;
    std::vector<double> by_ratio{first4, 0.5000, 0.5626, first3};
    for (size_t k = 0; k + 1 < by_ratio.size(); k++) {
      require(by_ratio[k + 1] >= by_ratio[k] - slack,
              "first transition non-decreasing with the dof ratio");
    }
    printf("%s criterion 9: M2+M2->M5 and M2+M3->M5 first transitions and the "
           "dof-ratio trend\n", g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion10()
  {
    for (const Case & c : {kCases[0], kCases[1]}) {
      LiftedBasis b = build_case(c.s, c.t, c.mult);
      MinResult res = minimize_at(b, std::vector<double>(c.s.rank(), 1.0),
                                  scan_opts());
      require(res.V_min <= 1e-8, std::string(c.name) + " V(1) = 0");
      MassSpectrum sp = mass_spectrum(mass_form(b, res.minimizer), probe_labels(b));
      const int m = c.t.dims[0];
      std::vector<double> sorted = sp.masses;
      std::sort(sorted.begin(), sorted.end());
      require(sorted[0] <= 1e-6, std::string(c.name) + " trace massless");
      for (size_t k = 1; k < sorted.size(); k++) {
        require(std::abs(sorted[k] - std::sqrt(2.0 * m)) <= 1e-6,
                std::string(c.name) + " mass sqrt(2m) at lambda=1");
      }
    }
    printf("%s criterion 10: lambda=1 endpoint reproduces the representation "
           "configuration and its masses\n", g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion11()
  {
    std::mt19937 rng(11);
    auto random_step = [&](const AlgebraProfile & src) {
      // random feasible target and multiplicities
      int s = 1 + int(rng() % 2);
      AlgebraProfile tgt;
      std::vector<std::vector<int>> mult(s);
      for (int j = 0; j < s; j++) {
        int total = 0;
        for (size_t i = 0; i < src.dims.size(); i++) {
          int a = int(rng() % 3);  // 0..2 copies
          mult[j].push_back(a);
          total += a * src.dims[i];
        }
        if (total == 0) {
          mult[j][0] = 1;
          total = src.dims[0];
        }
        tgt.dims.push_back(total + int(rng() % 3));  // pad 0..2
      }
      return validate_embedding(src, tgt, mult);
    };
    for (int rep = 0; rep < 100; rep++) {
      AlgebraProfile a{{1 + int(rng() % 3), 1 + int(rng() % 3)}};
      EmbeddingSpec f = random_step(a);
      EmbeddingSpec g = random_step(f.target);
      EmbeddingSpec h = random_step(g.target);
      std::vector<long long> v;
      for (size_t i = 0; i < a.dims.size(); i++) v.push_back(int(rng() % 7) - 3);
      std::vector<long long> direct =
          k0_pushforward(compose_embeddings(compose_embeddings(f, g), h), v);
      std::vector<long long> assoc =
          k0_pushforward(compose_embeddings(f, compose_embeddings(g, h)), v);
      std::vector<long long> steps =
          k0_pushforward(h, k0_pushforward(g, k0_pushforward(f, v)));
      require(direct == steps, "pushforward functoriality");
      require(direct == assoc, "composition associativity");
    }
    printf("%s criterion 11: exact module-map functoriality over 100 random "
           "three-step chains\n", g_ok ? "[PASS]" : "[FAIL]");
  }

  void criterion12()
  {
    LiftedBasis basis = build_case(kCases[0].s, kCases[0].t, kCases[0].mult);
    PathSpec path;
    path.kind = PathSpec::Kind::Diagonal;
    path.t0 = -1.0;
    path.t1 = 3.0;
    path.samples = 41;
    MinOptions opts = scan_opts(7);
    std::ostringstream a, b;
    write_csv(scan_path(basis, path, opts), a);
    write_csv(scan_path(basis, path, opts), b);
    require(a.str() == b.str(), "byte-identical CSV for identical seeds");
    require(!a.str().empty(), "CSV produced");
    printf("%s criterion 12: repeated scans with one seed give byte-identical "
           "CSV\n", g_ok ? "[PASS]" : "[FAIL]");
  }

}

int main(int argc, char ** argv)
{
  int which = 0;
  for (int k = 1; k + 1 < argc; k++) {
    if (std::strcmp(argv[k], "--criterion") == 0) which = std::atoi(argv[k + 1]);
  }
  if (which < 1 || which > 12) {
    std::fprintf(stderr, "usage: acceptance --criterion <1..12>\n");
    return 2;
  }
  switch (which) {
    case 1: criterion1(); break;
    case 2: criterion2(); break;
    case 3: criterion3(); break;
    case 4: criterion4(); break;
    case 5: criterion5(); break;
    case 6: criterion6(); break;
    case 7: criterion7(); break;
    case 8: criterion8(); break;
    case 9: criterion9(); break;
    case 10: criterion10(); break;
    case 11: criterion11(); break;
    case 12: criterion12(); break;
  }
  for (const std::string & note : g_notes) {
    std::fprintf(stderr, "  failed: %s\n", note.c_str());
  }
  return g_ok ? 0 : 1;
}
