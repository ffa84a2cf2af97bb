#pragma once

// Parameter sweeps, zero-temperature ground states and critical-point
// extraction over (K, B, T). Everything here is double precision.

#include <optional>
#include <string>
#include <vector>

#include "qutrit/entanglement.hpp"
#include "qutrit/model.hpp"
#include "qutrit/spin_algebra.hpp"
#include "qutrit/thermal.hpp"

namespace qutrit {

/// Inclusive linear grid start..stop with count points (count == 1 gives start).
struct Grid {
  double start = 0;
  double stop = 0;
  int count = 1;

  std::vector<double> values() const;
};

struct SweepSpec {
  Grid K;
  Grid B;
  Grid T;
  double J = 0;
  ExchangeForm exchange = ExchangeForm::kHalfTransverse;

  /// Throws InvalidSweep unless every count >= 1 and every T > 0.
  void validate() const;
};

struct SweepRow {
  double K;
  double B;
  double T;
  double negativity;
};

/// Rows are K-major, then B, then T.
struct SweepResult {
  std::vector<SweepRow> rows;
};

/// N(gibbs_state(H(p), T)).
double thermal_negativity(const ModelParams<double>& p, double temperature);

SweepResult sweep(const SweepSpec& spec);

struct GroundState {
  double energy;
  std::vector<PairVector<double>> states;  // orthonormal basis of the ground manifold
  std::vector<Level> labels;               // filled only when the closed-form spectrum applies
  DensityMatrix<double> zero_temperature_state;
};

/// Lowest manifold: all levels with E - E_min < 1e-9 max(1, |E_min|). The
/// T -> 0 state is the equal-weight mixture over that manifold.
GroundState ground_state(const ModelParams<double>& p);

enum class CriticalParameter { kB, kT, kK };

std::string to_string(CriticalParameter parameter);

/// A threshold crossing. For kK the bracket and estimate are |K| (the scan
/// runs over negative K).
struct CriticalPoint {
  CriticalParameter parameter;
  double lower;        // bracket end with the smaller parameter value
  double upper;
  double estimate;     // bracket midpoint
  double negativity;   // N at the estimate
  bool entangled_below;  // true when N > threshold at `lower`
};

struct CriticalOptions {
  double threshold = kEntanglementThreshold;
  double tol = 1e-6;
  double J = 0;
  ExchangeForm exchange = ExchangeForm::kHalfTransverse;
};

/// Field above which N drops below threshold at fixed K, T. The scan steps B
/// by 0.1 max(1, |K|) up to 100 max(1, |K|), then bisects to width < tol.
CriticalPoint critical_field(double K, double T, const CriticalOptions& options = {});

struct CriticalTemperature {
  CriticalPoint upper;                 // last entangled -> separable crossing
  std::optional<CriticalPoint> lower;  // separable -> entangled onset below `upper` (revival)
  std::vector<CriticalPoint> crossings;  // every crossing found, ascending in T
};

/// Scans T = 1e-3 * 1.5^k up to 1e3 and bisects every sign change of
/// (N > threshold).
CriticalTemperature critical_temperature(double K, double B, const CriticalOptions& options = {});

/// Smallest |K| (K < 0) above which N exceeds threshold at fixed T, B. The
/// scan is |K| = 0.01 * 1.5^k up to 1e3; |K| = 0 closes the bracket from below.
CriticalPoint critical_coupling(double T, double B = 0, const CriticalOptions& options = {});

/// Grids for the three figure tables; defaults cover the plotted ranges.
struct FigureGrids {
  Grid K{-6.0, 0.0, 121};
  Grid B{0.0, 3.0, 121};
  Grid T{0.025, 3.0, 120};
};

struct FigureTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Figure 1: K, N at T = 0.05, 0.6, 1.0 (B = 0).
/// Figure 2: long format K, B, N at T = 0.1.
/// Figure 3: T, N at B = 0.2, 1.0, 1.5 (K = -3).
/// Throws InvalidSweep for any other n.
FigureTable figure_table(int n, const FigureGrids& grids = {});

}  // namespace qutrit
