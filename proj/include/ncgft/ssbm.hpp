#ifndef NCGFT_SSBM_HPP
#define NCGFT_SSBM_HPP

#include "ncgft/gauge.hpp"
#include "ncgft/optim.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ncgft
{

  /// Deterministic 64-bit stream (splitmix64); used for every random start
  /// so output is independent of platform library details and scheduling.
  struct RandomStream
  {
    std::uint64_t state;

    explicit RandomStream(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double uniform(double lo, double hi);
  };

  std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

  struct PathSpec
  {
    enum class Kind { Diagonal, AntiDiagonal, Grid, Segment };

    Kind kind = Kind::Diagonal;
    double t0 = 0.0;
    double t1 = 1.0;
    int samples = 81;
    double c = 0.5;                ///< anti-diagonal constant lambda1+lambda2
    std::vector<double> from, to;  ///< segment endpoints in lambda space

    /// Path parameters (sorted) and the lambda point for each.
    std::vector<double> parameters() const;
    std::vector<double> lambda_at(double t, int rank) const;
  };

  struct MinOptions
  {
    int restarts = 8;
    int max_iters = 2000;
    double grad_tol = 1e-9;
    double box = 1.5;              ///< random starts uniform in [-box, box]
    std::uint64_t seed = 0;
    int threads = 1;
  };

  struct MinResult
  {
    std::vector<double> lambdas;
    double V_min = 0.0;
    FieldConfiguration minimizer;
    int restarts_used = 0;
    bool converged = false;
    double grad_norm = 0.0;
  };

  /// Constrained minimum of the Higgs potential over the non-inherited
  /// fields at a fixed lambda point: local quasi-Newton descents from the
  /// warm start, the basis-extension start, and seeded random starts; best
  /// local minimum wins. Deterministic for a fixed (seed, salt).
  MinResult minimize_at(const LiftedBasis & basis, const std::vector<double> & lambdas,
                        const MinOptions & opts,
                        const FieldConfiguration * warm = nullptr,
                        std::uint64_t salt = 0);

  struct ScanRow
  {
    double t = 0.0;
    std::vector<double> lambdas;
    MinResult min;
    MassSpectrum spectrum;
  };

  struct ScanResult
  {
    PathSpec path;
    MinOptions opts;
    std::vector<ScanRow> rows;
  };

  /// Sequential sweep with warm-start continuation plus random restarts.
  ScanResult scan_path(const LiftedBasis & basis, const PathSpec & path,
                       const MinOptions & opts);

  /// Jumps of the sorted mass vector (sup-norm) or V_min between adjacent
  /// rows above threshold, refined by bisection re-minimization to
  /// path-parameter resolution 1e-3.
  std::vector<double> detect_discontinuities(const LiftedBasis & basis,
                                             const ScanResult & result,
                                             double threshold,
                                             const MinOptions & opts);

  struct SummaryRow
  {
    std::string name;
    int n_ndof = 0;
    int n_idof = 0;
    double r_dof = 0.0;
    double lambda_first = 0.0;   ///< NaN when missing
    double lambda_second = 0.0;  ///< NaN when missing
    std::vector<std::string> warnings;
  };

  /// Table-style summary rows sorted by r_dof.
  std::vector<SummaryRow> summarize(
      const std::vector<std::string> & names,
      const std::vector<const LiftedBasis *> & bases,
      const std::vector<std::vector<double>> & discontinuities);

  /// CSV rows: path_param, lambda_1..r, V_min, converged, then mass:label
  /// pairs sorted descending. Fixed formatting (byte-stable given a seed).
  void write_csv(const ScanResult & result, std::ostream & os);

}

#endif
