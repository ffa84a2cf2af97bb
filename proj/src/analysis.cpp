#include "qutrit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace qutrit {

namespace {

std::string coordinates(double K, double B, double T) {
  std::ostringstream os;
  os.precision(12);
  os << "at K=" << K << ", B=" << B << ", T=" << T;
  return os.str();
}

ModelParams<double> params(double K, double B, const CriticalOptions& options) {
  return {K, B, options.J, options.exchange};
}

// Bisects [lo, hi] on (N > threshold) until the width is below tol. The
// predicate must differ at the two ends.
CriticalPoint bisect(CriticalParameter parameter, double lo, double hi, double tol,
                     const std::function<double(double)>& negativity_of, double threshold) {
  const bool lo_entangled = negativity_of(lo) > threshold;
  while (hi - lo >= tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((negativity_of(mid) > threshold) == lo_entangled) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double estimate = 0.5 * (lo + hi);
  return {parameter, lo, hi, estimate, negativity_of(estimate), lo_entangled};
}

std::vector<double> geometric_samples(double first, double factor, double last) {
  std::vector<double> out;
  for (double x = first; x <= last * (1 + 1e-12); x *= factor) out.push_back(x);
  return out;
}

}  // namespace

std::vector<double> Grid::values() const {
  std::vector<double> out;
  if (count <= 0) return out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(start);
    return out;
  }
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(i + 1 == count ? stop : start + step * i);
  return out;
}

void SweepSpec::validate() const {
  for (const Grid* g : {&K, &B, &T}) {
    if (g->count < 1) throw Error(ErrorCode::kInvalidSweep, "grid count must be >= 1");
    if (!std::isfinite(g->start) || !std::isfinite(g->stop)) {
      throw Error(ErrorCode::kInvalidSweep, "grid bounds must be finite");
    }
  }
  for (double t : T.values()) {
    if (!(t > 0)) throw Error(ErrorCode::kInvalidSweep, "temperatures must be > 0");
  }
}

double thermal_negativity(const ModelParams<double>& p, double temperature) {
  return negativity(gibbs_state(build_hamiltonian(p), temperature));
}

SweepResult sweep(const SweepSpec& spec) {
  spec.validate();
  const auto ks = spec.K.values();
  const auto bs = spec.B.values();
  const auto ts = spec.T.values();
  SweepResult result;
  result.rows.reserve(ks.size() * bs.size() * ts.size());
  for (double k : ks) {
    for (double b : bs) {
      const auto h = build_hamiltonian(ModelParams<double>{k, b, spec.J, spec.exchange});
      for (double t : ts) {
        try {
          result.rows.push_back({k, b, t, negativity(gibbs_state(h, t))});
        } catch (const Error& e) {
          throw Error(e.code(), std::string(e.what()) + " " + coordinates(k, b, t));
        }
      }
    }
  }
  return result;
}

GroundState ground_state(const ModelParams<double>& p) {
  std::vector<double> energies;
  std::vector<PairVector<double>> states;
  std::vector<Level> labels;
  const bool closed = p.J == 0 && p.exchange == ExchangeForm::kHalfTransverse;
  if (closed) {
    for (const auto& level : analytic_spectrum(p)) {
      energies.push_back(level.energy);
      states.push_back(level.state);
      labels.push_back(level.label);
    }
  } else {
    const auto eig = eigh_symmetric(build_hamiltonian(p));
    for (int i = 0; i < kPairDim; ++i) {
      energies.push_back(eig.eigenvalues(i));
      states.push_back(eig.eigenvectors.col(i));
    }
  }
  const double e_min = *std::min_element(energies.begin(), energies.end());
  const double tol = 1e-9 * std::max(1.0, std::abs(e_min));

  std::vector<PairVector<double>> manifold;
  std::vector<Level> manifold_labels;
  OperatorMatrix<double> rho = OperatorMatrix<double>::Zero();
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (energies[i] - e_min < tol) {
      manifold.push_back(states[i]);
      if (closed) manifold_labels.push_back(labels[i]);
      rho += states[i] * states[i].transpose();
    }
  }
  rho /= static_cast<double>(manifold.size());
  return {e_min, std::move(manifold), std::move(manifold_labels), DensityMatrix<double>::trusted(rho)};
}

std::string to_string(CriticalParameter parameter) {
  switch (parameter) {
    case CriticalParameter::kB: return "B";
    case CriticalParameter::kT: return "T";
    case CriticalParameter::kK: return "K";
  }
  return "?";
}

CriticalPoint critical_field(double K, double T, const CriticalOptions& options) {
  require_positive_temperature(T);
  const auto n_of = [&](double b) { return thermal_negativity(params(K, b, options), T); };
  if (!(n_of(0.0) > options.threshold)) {
    throw Error(ErrorCode::kNoEntanglementAtZeroField, coordinates(K, 0.0, T));
  }
  const double scale = std::max(1.0, std::abs(K));
  const double step = 0.1 * scale;
  const double limit = 100 * scale;
  double lo = 0;
  for (int i = 1;; ++i) {
    const double b = step * i;
    if (b > limit * (1 + 1e-12)) {
      throw Error(ErrorCode::kBracketNotFound, "N stays above threshold up to B=" + std::to_string(limit));
    }
    if (!(n_of(b) > options.threshold)) return bisect(CriticalParameter::kB, lo, b, options.tol, n_of, options.threshold);
    lo = b;
  }
}

CriticalTemperature critical_temperature(double K, double B, const CriticalOptions& options) {
  const auto n_of = [&](double t) { return thermal_negativity(params(K, B, options), t); };
  const auto ts = geometric_samples(1e-3, 1.5, 1e3);
  std::vector<bool> entangled;
  entangled.reserve(ts.size());
  for (double t : ts) entangled.push_back(n_of(t) > options.threshold);

  if (std::none_of(entangled.begin(), entangled.end(), [](bool e) { return e; })) {
    throw Error(ErrorCode::kNoEntangledPhase, "K=" + std::to_string(K) + ", B=" + std::to_string(B));
  }
  if (entangled.back()) {
    throw Error(ErrorCode::kBracketNotFound, "N stays above threshold up to T=1e3");
  }

  CriticalTemperature out{};
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (entangled[i] != entangled[i + 1]) {
      out.crossings.push_back(bisect(CriticalParameter::kT, ts[i], ts[i + 1], options.tol, n_of, options.threshold));
    }
  }
  // The final crossing is entangled -> separable since the last sample is separable.
  out.upper = out.crossings.back();
  if (out.crossings.size() >= 2) {
    const auto& prev = out.crossings[out.crossings.size() - 2];
    if (!prev.entangled_below) out.lower = prev;
  }
  return out;
}

CriticalPoint critical_coupling(double T, double B, const CriticalOptions& options) {
  require_positive_temperature(T);
  const auto n_of = [&](double abs_k) { return thermal_negativity(params(-abs_k, B, options), T); };
  double lo = 0;
  for (double abs_k : geometric_samples(0.01, 1.5, 1e3)) {
    if (n_of(abs_k) > options.threshold) {
      return bisect(CriticalParameter::kK, lo, abs_k, options.tol, n_of, options.threshold);
    }
    lo = abs_k;
  }
  throw Error(ErrorCode::kBracketNotFound, "no entanglement for |K| <= 1e3 at T=" + std::to_string(T));
}

FigureTable figure_table(int n, const FigureGrids& grids) {
  FigureTable table;
  switch (n) {
    case 1: {
      table.header = {"K", "N(T=0.05)", "N(T=0.6)", "N(T=1.0)"};
      SweepSpec{grids.K, Grid{0.0, 0.0, 1}, Grid{1.0, 1.0, 1}}.validate();
      for (double k : grids.K.values()) {
        const auto h = build_hamiltonian(ModelParams<double>{k, 0.0});
        table.rows.push_back({k, negativity(gibbs_state(h, 0.05)), negativity(gibbs_state(h, 0.6)),
                              negativity(gibbs_state(h, 1.0))});
      }
      break;
    }
    case 2: {
      table.header = {"K", "B", "N"};
      SweepSpec spec{grids.K, grids.B, Grid{0.1, 0.1, 1}};
      for (const auto& row : sweep(spec).rows) table.rows.push_back({row.K, row.B, row.negativity});
      break;
    }
    case 3: {
      table.header = {"T", "N(B=0.2)", "N(B=1.0)", "N(B=1.5)"};
      SweepSpec{Grid{-3.0, -3.0, 1}, Grid{0.0, 0.0, 1}, grids.T}.validate();
      const auto h02 = build_hamiltonian(ModelParams<double>{-3.0, 0.2});
      const auto h10 = build_hamiltonian(ModelParams<double>{-3.0, 1.0});
      const auto h15 = build_hamiltonian(ModelParams<double>{-3.0, 1.5});
      for (double t : grids.T.values()) {
        table.rows.push_back({t, negativity(gibbs_state(h02, t)), negativity(gibbs_state(h10, t)),
                              negativity(gibbs_state(h15, t))});
      }
      break;
    }
    default:
      throw Error(ErrorCode::kInvalidSweep, "figure must be 1, 2 or 3, got " + std::to_string(n));
  }
  return table;
}

}  // namespace qutrit
