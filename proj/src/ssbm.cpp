#include "ncgft/ssbm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace ncgft
{

  std::uint64_t RandomStream::next()
  {
    // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double RandomStream::uniform(double lo, double hi)
  {
    double u = (next() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

  std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
  {
    RandomStream s(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL));
    return s.next();
  }

  std::vector<double> PathSpec::parameters() const
  {
    if (samples < 2) throw std::invalid_argument("PathSpec: need at least 2 samples");
    std::vector<double> out;
    if (kind == Kind::Grid) {
      // row-major grid over [t0,t1]^2, parameter = linear index
      for (int k = 0; k < samples * samples; k++) out.push_back(static_cast<double>(k));
      return out;
    }
    for (int k = 0; k < samples; k++) {
      out.push_back(t0 + (t1 - t0) * k / (samples - 1));
    }
    return out;
  }

  std::vector<double> PathSpec::lambda_at(double t, int rank) const
  {
    switch (kind) {
      case Kind::Diagonal:
        return std::vector<double>(rank, t);
      case Kind::AntiDiagonal:
        if (rank != 2) throw std::invalid_argument("PathSpec: anti-diagonal needs rank 2");
        return {t, c - t};
      case Kind::Segment: {
        if (static_cast<int>(from.size()) != rank || static_cast<int>(to.size()) != rank) {
          throw std::invalid_argument("PathSpec: segment endpoints have wrong length");
        }
        std::vector<double> out(rank);
        double s = (t1 > t0) ? (t - t0) / (t1 - t0) : 0.0;
        for (int i = 0; i < rank; i++) out[i] = from[i] + s * (to[i] - from[i]);
        return out;
      }
      case Kind::Grid: {
        if (rank != 2) throw std::invalid_argument("PathSpec: grid needs rank 2");
        int k = static_cast<int>(t + 0.5);
        int row = k / samples, col = k % samples;
        double h = (samples > 1) ? (t1 - t0) / (samples - 1) : 0.0;
        return {t0 + row * h, t0 + col * h};
      }
    }
    throw std::logic_error("PathSpec: unknown kind");
  }

  MinResult minimize_at(const LiftedBasis & basis, const std::vector<double> & lambdas,
                        const MinOptions & opts,
                        const FieldConfiguration * warm, std::uint64_t salt)
  {
    if (opts.restarts < 1) throw std::invalid_argument("minimize_at: need restarts >= 1");
    const int n = free_dimension(basis);

    // deterministic list of starts: warm (or zero), basis extension, randoms
    std::vector<RVec> starts;
    if (warm) starts.push_back(flatten_free(basis, *warm));
    else starts.push_back(RVec::Zero(n));
    {
      FieldConfiguration bc = basis_config(basis);
      starts.push_back(flatten_free(basis, bc));
    }
    for (int k = static_cast<int>(starts.size()); k < opts.restarts + 1; k++) {
      RandomStream rng(mix_seed(opts.seed, salt, static_cast<std::uint64_t>(k)));
      RVec x(n);
      for (int t = 0; t < n; t++) x(t) = rng.uniform(-opts.box, opts.box);
      starts.push_back(std::move(x));
    }

    ObjectiveFn fg = [&](const RVec & x, RVec & grad) {
      FieldConfiguration cfg = unflatten_free(basis, lambdas, x);
      grad = higgs_gradient(basis, cfg);
      return higgs_potential(basis, cfg);
    };

    LbfgsOptions lopts;
    lopts.max_iters = opts.max_iters;
    lopts.grad_tol = opts.grad_tol;

    std::vector<LbfgsResult> results(starts.size());
    auto run_range = [&](size_t lo, size_t hi) {
      for (size_t k = lo; k < hi; k++) {
        results[k] = lbfgs_minimize(fg, starts[k], lopts);
      }
    };
    const int nthreads = std::max(1, std::min<int>(opts.threads,
                                                   static_cast<int>(starts.size())));
    if (nthreads == 1) {
      run_range(0, starts.size());
    } else {
      std::vector<std::thread> pool;
      size_t chunk = (starts.size() + nthreads - 1) / nthreads;
      for (int t = 0; t < nthreads; t++) {
        size_t lo = t * chunk, hi = std::min(starts.size(), lo + chunk);
        if (lo < hi) pool.emplace_back(run_range, lo, hi);
      }
      for (auto & th : pool) th.join();
    }

    size_t best = 0;
    for (size_t k = 1; k < results.size(); k++) {
      if (results[k].f < results[best].f) best = k;
    }

    MinResult out;
    out.lambdas = lambdas;
    out.V_min = results[best].f;
    out.minimizer = unflatten_free(basis, lambdas, results[best].x);
    out.restarts_used = static_cast<int>(starts.size());
    out.converged = results[best].converged;
    out.grad_norm = results[best].grad_norm;
    return out;
  }

  namespace
  {

    ScanRow make_row(const LiftedBasis & basis, double t, MinResult min)
    {
      ScanRow row;
      row.t = t;
      row.lambdas = min.lambdas;
      row.spectrum = mass_spectrum(mass_form(basis, min.minimizer), probe_labels(basis));
      row.min = std::move(min);
      return row;
    }

    double spectrum_distance(const MassSpectrum & a, const MassSpectrum & b)
    {
      double worst = 0.0;
      for (size_t k = 0; k < a.masses.size(); k++) {
        worst = std::max(worst, std::abs(a.masses[k] - b.masses[k]));
      }
      return worst;
    }

  }

  ScanResult scan_path(const LiftedBasis & basis, const PathSpec & path,
                       const MinOptions & opts)
  {
    ScanResult out;
    out.path = path;
    out.opts = opts;
    const int rank = basis.spec.source.rank();
    std::vector<double> params = path.parameters();
    const FieldConfiguration * warm = nullptr;
    FieldConfiguration prev;
    for (size_t k = 0; k < params.size(); k++) {
      std::vector<double> lambdas = path.lambda_at(params[k], rank);
      MinResult min = minimize_at(basis, lambdas, opts, warm, static_cast<std::uint64_t>(k));
      prev = min.minimizer;
      warm = &prev;
      out.rows.push_back(make_row(basis, params[k], std::move(min)));
    }
    return out;
  }

  std::vector<double> detect_discontinuities(const LiftedBasis & basis,
                                             const ScanResult & result,
                                             double threshold,
                                             const MinOptions & opts)
  {
    std::vector<double> out;
    const int rank = basis.spec.source.rank();

    // single local descent (no restarts): follows the basin of `start`
    auto follow = [&](const std::vector<double> & lambdas,
                      const FieldConfiguration & start) {
      ObjectiveFn fg = [&](const RVec & x, RVec & grad) {
        FieldConfiguration cfg = unflatten_free(basis, lambdas, x);
        grad = higgs_gradient(basis, cfg);
        return higgs_potential(basis, cfg);
      };
      LbfgsOptions lopts;
      lopts.max_iters = opts.max_iters;
      lopts.grad_tol = opts.grad_tol;
      LbfgsResult r = lbfgs_minimize(fg, flatten_free(basis, start), lopts);
      return std::make_pair(r.f, unflatten_free(basis, lambdas, r.x));
    };

    for (size_t k = 0; k + 1 < result.rows.size(); k++) {
      const ScanRow & ra = result.rows[k];
      const ScanRow & rb = result.rows[k + 1];

      // continue each row's minimizer to the neighbouring point: on a smooth
      // branch both land in the other row's basin (the test is independent of
      // the smooth drift of the masses along the branch); testing both
      // directions also catches jumps where one basin ceases to exist
      auto [vl, cl] = follow(rb.lambdas, ra.min.minimizer);
      auto [vr, cr] = follow(ra.lambdas, rb.min.minimizer);
      MassSpectrum sl = mass_spectrum(mass_form(basis, cl), probe_labels(basis));
      MassSpectrum sr = mass_spectrum(mass_form(basis, cr), probe_labels(basis));
      double jump = std::max(
          std::max(spectrum_distance(sl, rb.spectrum), std::abs(vl - rb.min.V_min)),
          std::max(spectrum_distance(sr, ra.spectrum), std::abs(vr - ra.min.V_min)));
      if (jump <= threshold) continue;

      // bisection: locally continue both branch minimizers to the midpoint
      // and keep the side whose branch is the global one there
      double a = ra.t, b = rb.t;
      FieldConfiguration ca = ra.min.minimizer, cb = rb.min.minimizer;
      double va_end = ra.min.V_min, vb_end = rb.min.V_min;
      int guard = 0;
      while (b - a > 1e-3 && guard++ < 60) {
        double m = 0.5 * (a + b);
        std::vector<double> lambdas = result.path.lambda_at(m, rank);
        auto [va, cam] = follow(lambdas, ca);
        auto [vb, cbm] = follow(lambdas, cb);
        const double tie = 1e-7 * (1.0 + std::abs(va));
        bool keep_left;
        if (std::abs(va - vb) > tie) {
          keep_left = va < vb;
        } else {
          // both continuations fell into one basin, so the other branch has
          // already ceased to exist at m; identify the surviving basin by
          // continuing it back to an endpoint and comparing with the branch
          // minimum recorded there
          auto [vshared_b, cs1] = follow(result.path.lambda_at(b, rank), cam);
          if (vshared_b > vb_end + tie) {
            keep_left = true;  // shared basin is not the right branch
          } else {
            auto [vshared_a, cs2] = follow(result.path.lambda_at(a, rank), cam);
            keep_left = !(vshared_a > va_end + tie);
          }
        }
        if (keep_left) {
          a = m; ca = std::move(cam); va_end = va;
        } else {
          b = m; cb = std::move(cbm); vb_end = vb;
        }
      }
      out.push_back(0.5 * (a + b));
    }
    return out;
  }

  std::vector<SummaryRow> summarize(
      const std::vector<std::string> & names,
      const std::vector<const LiftedBasis *> & bases,
      const std::vector<std::vector<double>> & discontinuities)
  {
    std::vector<SummaryRow> rows;
    for (size_t k = 0; k < names.size(); k++) {
      SummaryRow row;
      row.name = names[k];
      DofCounts dof = dof_counts(*bases[k]);
      row.n_idof = dof.n_idof;
      row.n_ndof = dof.n_ndof;
      row.r_dof = dof.r_dof;
      const std::vector<double> & disc = discontinuities[k];
      row.lambda_first = disc.size() > 0 ? disc[0] : std::nan("");
      row.lambda_second = disc.size() > 1 ? disc[1] : std::nan("");
      if (disc.size() < 2) row.warnings.push_back("missing discontinuity");
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const SummaryRow & a, const SummaryRow & b) { return a.r_dof < b.r_dof; });
    return rows;
  }

  void write_csv(const ScanResult & result, std::ostream & os)
  {
    char buf[64];
    auto num = [&](double v) {
      std::snprintf(buf, sizeof(buf), "%.12g", v);
      return std::string(buf);
    };
    const int rank = result.rows.empty() ? 0
                         : static_cast<int>(result.rows.front().lambdas.size());
    os << "path_param";
    for (int i = 0; i < rank; i++) os << ",lambda_" << (i + 1);
    os << ",V_min,converged";
    if (!result.rows.empty()) {
      for (size_t k = 0; k < result.rows.front().spectrum.masses.size(); k++) {
        os << ",mass_" << (k + 1);
      }
    }
    os << "\n";
    for (const ScanRow & row : result.rows) {
      os << num(row.t);
      for (double l : row.lambdas) os << "," << num(l);
      os << "," << num(row.min.V_min) << "," << (row.min.converged ? 1 : 0);
      // masses descending with labels
      std::vector<std::pair<double, std::string>> entries;
      for (size_t k = 0; k < row.spectrum.masses.size(); k++) {
        entries.push_back({row.spectrum.masses[k], row.spectrum.labels[k]});
      }
      std::sort(entries.begin(), entries.end(),
                [](const auto & a, const auto & b) {
                  if (a.first != b.first) return a.first > b.first;
                  return a.second < b.second;
                });
      for (const auto & [m, lab] : entries) {
        os << "," << num(m) << ":" << lab;
      }
      os << "\n";
    }
  }

}
