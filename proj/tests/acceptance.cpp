// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and never tuned at run time.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qutrit/analysis.hpp"
#include "qutrit/cli.hpp"

using namespace qutrit;
using Clock = std::chrono::steady_clock;

namespace {

const double kR3 = std::sqrt(3.0);

struct Check {
  std::string what;
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Check> checks;

  void add(const std::string& what, bool ok, const std::string& detail) { checks.push_back({what, ok, detail}); }
  bool passed() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> linspace(double a, double b, int n) { return Grid{a, b, n}.values(); }

std::string run_cli_binary(const std::string& args, int& status) {
  const std::string command = std::string(QUTRIT_CLI_PATH) + " " + args;
  FILE* pipe = popen(command.c_str(), "r");
  std::string out;
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[8192];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Criterion spectrum_oracle() {
  Criterion c{1, "spectrum oracle, 100 random (K,B), max abs < 1e-9, < 1 s", {}};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> k_dist(-5, 5), b_dist(0, 5);
  const auto start = Clock::now();
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const ModelParams<double> p{k_dist(rng), b_dist(rng)};
    const auto numeric = eigh_symmetric(build_hamiltonian(p)).eigenvalues;
    worst = std::max(worst, (numeric - sorted_energies(analytic_spectrum(p))).cwiseAbs().maxCoeff());
  }
  const double elapsed = seconds_since(start);
  c.add("max |E_numeric - E_closed|", worst < 1e-9, num(worst));
  c.add("runtime", elapsed < 1.0, num(elapsed) + " s");
  return c;
}

Criterion partition_oracle() {
  Criterion c{2, "partition function closed vs trace, 10x10x10 grid, relative 1e-10, < 5 s", {}};
  const auto start = Clock::now();
  double worst = 0;
  for (double k : linspace(-4, -0.5, 10))
    for (double b : linspace(0, 2, 10))
      for (double t : linspace(0.05, 10, 10)) {
        const ModelParams<double> p{k, b};
        worst = std::max(worst, relative_difference(partition_function_trace(build_hamiltonian(p), t),
                                                    partition_function_closed(p, t)));
      }
  const double elapsed = seconds_since(start);
  c.add("max relative difference", worst < 1e-10, num(worst));
  c.add("runtime", elapsed < 5.0, num(elapsed) + " s");
  return c;
}

Criterion pure_state_values() {
  Criterion c{3, "pure-state negativities 0.5 / 0.972 / 0.683 within 5e-4", {}};
  const double n7 = negativity(DensityMatrix<double>::pure(psi7_state<double>()));
  const double n8p = negativity(DensityMatrix<double>::pure(psi8_state<double>(+1)));
  const double n8m = negativity(DensityMatrix<double>::pure(psi8_state<double>(-1)));
  c.add("Psi7", std::abs(n7 - 0.5) < 5e-4, num(n7));
  c.add("Psi8+", std::abs(n8p - 0.972) < 5e-4 && std::abs(n8p - ((9 + 5 * kR3) / 12 - 0.5)) < 1e-12, num(n8p));
  c.add("Psi8-", std::abs(n8m - 0.683) < 5e-4 && std::abs(n8m - ((3 + kR3) / 4 - 0.5)) < 1e-12, num(n8m));
  return c;
}

Criterion pt_oracle() {
  Criterion c{4, "closed-form partial transpose vs numeric, 5x5x5 grid, entrywise 1e-10", {}};
  double worst = 0;
  for (double k : linspace(-4, -0.5, 5))
    for (double b : linspace(0, 2, 5))
      for (double t : linspace(0.05, 2, 5)) {
        const ModelParams<double> p{k, b};
        const auto numeric = partial_transpose(gibbs_state(build_hamiltonian(p), t), Subsystem::kA);
        worst = std::max(worst, (numeric.matrix - analytic_pt_matrix(p, t).matrix).cwiseAbs().maxCoeff());
      }
  c.add("max entrywise difference", worst < 1e-10, num(worst));
  return c;
}

Criterion figure1() {
  Criterion c{5, "Figure 1 (B=0): plateau, curve ordering, critical |K| ordering", {}};
  const double plateau = thermal_negativity(ModelParams<double>{-5.0, 0.0}, 0.05);
  c.add("N(K=-5, T=0.05) within 0.01 of 0.9717", std::abs(plateau - 0.9717) < 0.01, num(plateau));

  const auto table = figure_table(1);
  double worst = 0;  // most negative slack
  for (const auto& row : table.rows) {
    worst = std::min(worst, row[1] - row[2]);
    worst = std::min(worst, row[2] - row[3] + 1e-9);
  }
  c.add("N(0.05) >= N(0.6) >= N(1.0) - 1e-9 on the default K grid", worst >= 0, "min slack " + num(worst));

  const double k06 = critical_coupling(0.6).estimate;
  const double k10 = critical_coupling(1.0).estimate;
  c.add("|K_c|(T=0.6) < |K_c|(T=1.0)", k06 < k10, num(k06) + " vs " + num(k10));
  return c;
}

Criterion figure2() {
  Criterion c{6, "Figure 2 (T=0.1): N non-increasing in B, B_c rising in |K|, B_c(T=0.01) within 1% of sqrt3|K|/4", {}};
  const auto table = figure_table(2);
  double worst_rise = 0;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i][0] != table.rows[i - 1][0]) continue;
    worst_rise = std::max(worst_rise, table.rows[i][2] - table.rows[i - 1][2]);
  }
  c.add("max increase of N along B", worst_rise <= 1e-9, num(worst_rise));

  std::vector<double> fields;
  for (double k : {-1.0, -2.0, -3.0, -4.0}) fields.push_back(critical_field(k, 0.1).estimate);
  bool increasing = true;
  std::string listing;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i && !(fields[i] > fields[i - 1])) increasing = false;
    listing += (i ? ", " : "") + num(fields[i]);
  }
  c.add("B_c(T=0.1) strictly increasing over K = -1..-4", increasing, listing);

  for (double k : {-1.0, -2.0, -3.0, -4.0}) {
    const double expected = kR3 * std::abs(k) / 4;
    const double got = critical_field(k, 0.01).estimate;
    const double rel = std::abs(got - expected) / expected;
    c.add("B_c(K=" + num(k) + ", T=0.01) vs " + num(expected), rel < 0.01,
          num(got) + " (relative " + num(rel) + ")");
  }
  return c;
}

Criterion figure3() {
  Criterion c{7, "Figure 3 (K=-3): low-T value, revival at B=1.5, field-independent critical T", {}};
  const double t_min = FigureGrids{}.T.start;
  const double low = thermal_negativity(ModelParams<double>{-3.0, 0.2}, t_min);
  c.add("N(B=0.2, T=0.025) within 0.01 of 0.9717", std::abs(low - 0.9717) < 0.01, num(low));

  const double frozen = thermal_negativity(ModelParams<double>{-3.0, 1.5}, 0.025);
  c.add("N(B=1.5, T=0.025) < 1e-9", frozen < 1e-9, num(frozen));

  double peak = 0;
  for (double t : linspace(0.1, 1.0, 181)) {
    if (t <= 0.1 || t >= 1.0) continue;
    peak = std::max(peak, thermal_negativity(ModelParams<double>{-3.0, 1.5}, t));
  }
  c.add("max N(B=1.5) on T in (0.1, 1) > 1e-3", peak > 1e-3, num(peak));

  std::vector<double> tc;
  for (double b : {0.2, 1.0, 1.5}) tc.push_back(critical_temperature(-3.0, b).upper.estimate);
  double spread = 0;
  for (std::size_t i = 0; i < tc.size(); ++i)
    for (std::size_t j = i + 1; j < tc.size(); ++j)
      spread = std::max(spread, std::abs(tc[i] - tc[j]) / std::max(tc[i], tc[j]));
  c.add("upper T_c pairwise within 5%", spread < 0.05,
        num(tc[0]) + ", " + num(tc[1]) + ", " + num(tc[2]) + " (max relative " + num(spread) + ")");
  return c;
}

Criterion state_validity() {
  Criterion c{8, "Gibbs-state validity and negativity formula agreement on the criterion-2 grid", {}};
  double sym = 0, trace = 0, min_eig = 0, formulas = 0;
  for (double k : linspace(-4, -0.5, 10))
    for (double b : linspace(0, 2, 10))
      for (double t : linspace(0.05, 10, 10)) {
        const auto rho = gibbs_state(build_hamiltonian(ModelParams<double>{k, b}), t);
        const auto& m = rho.matrix();
        sym = std::max(sym, (m - m.transpose()).cwiseAbs().maxCoeff());
        trace = std::max(trace, std::abs(m.trace() - 1));
        min_eig = std::min(min_eig, eigh_symmetric(m).eigenvalues(0));
        const auto report = negativity_report(rho);
        formulas = std::max(formulas, std::abs(report.trace_norm_route - report.negative_sum));
      }
  c.add("symmetry", sym < 1e-13, num(sym));
  c.add("unit trace", trace < 1e-12, num(trace));
  c.add("PSD", min_eig > -1e-12, "min eigenvalue " + num(min_eig));
  c.add("trace-norm vs negative-eigenvalue negativity", formulas < 1e-11, num(formulas));
  return c;
}

Criterion determinism() {
  Criterion c{9, "figure CSVs byte-identical across runs, all three in < 30 s", {}};
  std::vector<std::string> first;
  const auto start = Clock::now();
  bool exit_ok = true;
  for (int n = 1; n <= 3; ++n) {
    int status = 0;
    first.push_back(run_cli_binary("figure " + std::to_string(n), status));
    exit_ok = exit_ok && status == 0;
  }
  const double elapsed = seconds_since(start);
  bool identical = true;
  for (int n = 1; n <= 3; ++n) {
    int status = 0;
    identical = identical && run_cli_binary("figure " + std::to_string(n), status) == first[n - 1];
  }
  c.add("exit status 0", exit_ok, "");
  c.add("byte-identical", identical, "");
  c.add("runtime", elapsed < 30.0, num(elapsed) + " s");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::function<Criterion()>> suite = {spectrum_oracle, partition_oracle, pure_state_values,
                                                         pt_oracle,       figure1,          figure2,
                                                         figure3,         state_validity,   determinism};
  int failures = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    Criterion c{static_cast<int>(i + 1), "(aborted)", {}};
    try {
      c = suite[i]();
    } catch (const std::exception& e) {
      c.add("exception", false, e.what());
    }
    std::cout << (c.passed() ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << '\n';
    for (const auto& check : c.checks) {
      std::cout << "      [" << (check.ok ? "ok" : "xx") << "] " << check.what;
      if (!check.detail.empty()) std::cout << ": " << check.detail;
      std::cout << '\n';
    }
    if (!c.passed()) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
