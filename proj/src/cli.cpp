#include "qutrit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qutrit::cli {

namespace {

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& names) {
    columns_ = names.size();
    write_row(names);
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::logic_error("CSV row width does not match header");
    write_row(cells);
  }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    row(cells);
  }

 private:
  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << '\n';
  }

  std::ostream& os_;
  std::size_t columns_ = 0;
};

// Flags shared by the subcommands. Optionals distinguish "not given".
struct CliConfig {
  std::optional<double> K;
  std::optional<double> B;
  std::optional<double> T;
  double J = 0;
  std::string exchange = "half-transverse";
  std::optional<std::string> K_range;
  std::optional<std::string> B_range;
  std::optional<std::string> T_range;
  double threshold = kEntanglementThreshold;
  double tol = 1e-6;
  int figure = 0;
  std::string out_path;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const CLI::Validator kFinite = CLI::Validator(
    [](std::string& text) -> std::string {
      try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) return "not a finite decimal: " + text;
      } catch (const std::exception&) {
        return "not a finite decimal: " + text;
      }
      return {};
    },
    "FINITE");

const CLI::Validator kGridSpec = CLI::Validator(
    [](std::string& text) -> std::string {
      try {
        parse_grid(text);
      } catch (const std::exception& e) {
        return e.what();
      }
      return {};
    },
    "START:STOP:COUNT");

ExchangeForm exchange_form(const CliConfig& c) {
  return c.exchange == "isotropic" ? ExchangeForm::kIsotropic : ExchangeForm::kHalfTransverse;
}

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

Grid axis(const std::optional<std::string>& range, const std::optional<double>& scalar, const char* name) {
  if (range) return parse_grid(*range);
  if (scalar) return Grid{*scalar, *scalar, 1};
  throw UsageError(std::string("need --") + name + " or --" + name + "-range");
}

CriticalOptions critical_options(const CliConfig& c) {
  return {c.threshold, c.tol, c.J, exchange_form(c)};
}

const std::vector<std::string> kCriticalHeader = {"parameter", "kind", "lower", "upper", "estimate", "negativity"};

std::vector<std::string> critical_row(const CriticalPoint& p, const std::string& kind) {
  return {to_string(p.parameter), kind,   format_number(p.lower), format_number(p.upper),
          format_number(p.estimate), format_number(p.negativity)};
}

void emit_spectrum(const CliConfig& c, CsvWriter& csv) {
  const ModelParams<double> p{require(c.K, "--K"), require(c.B, "--B"), c.J, exchange_form(c)};
  const auto numeric = eigh_symmetric(build_hamiltonian(p)).eigenvalues;
  csv.header({"label", "analytic_energy", "numeric_energy", "abs_diff"});
  if (p.J != 0 || p.exchange != ExchangeForm::kHalfTransverse) {
    for (int i = 0; i < kPairDim; ++i) {
      csv.row({"E" + std::to_string(i + 1), std::string("nan"), format_number(numeric(i)), std::string("nan")});
    }
    return;
  }
  // Rows ascend in analytic energy (ties keep label order) and pair with the
  // sorted numeric eigenvalues.
  const auto levels = analytic_spectrum(p);
  std::vector<int> order(levels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return levels[a].energy < levels[b].energy; });
  for (int i = 0; i < kPairDim; ++i) {
    const auto& level = levels[order[i]];
    csv.row({std::string(level_label(level.label)), format_number(level.energy), format_number(numeric(i)),
             format_number(std::abs(level.energy - numeric(i)))});
  }
}

void emit_sweep(const SweepSpec& spec, CsvWriter& csv) {
  try {
    spec.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  csv.header({"K", "B", "T", "N"});
  for (const auto& r : sweep(spec).rows) csv.row(std::vector<double>{r.K, r.B, r.T, r.negativity});
}

void emit_figure(const CliConfig& c, CsvWriter& csv) {
  FigureGrids grids;
  if (c.K_range) grids.K = parse_grid(*c.K_range);
  if (c.B_range) grids.B = parse_grid(*c.B_range);
  if (c.T_range) grids.T = parse_grid(*c.T_range);
  FigureTable table;
  try {
    table = figure_table(c.figure, grids);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidSweep) throw UsageError(e.what());
    throw;
  }
  csv.header(table.header);
  for (const auto& row : table.rows) csv.row(row);
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw std::invalid_argument("grid must be START:STOP:COUNT, got '" + text + "'");
  const auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v)) {
      throw std::invalid_argument("grid bound is not a finite decimal: '" + s + "'");
    }
    return v;
  };
  Grid g{number(parts[0]), number(parts[1]), 0};
  std::size_t used = 0;
  long count = 0;
  try {
    count = std::stol(parts[2], &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (parts[2].empty() || used != parts[2].size() || count < 1 || count > 10'000'000) {
    throw std::invalid_argument("grid count must be a positive integer, got '" + parts[2] + "'");
  }
  g.count = static_cast<int>(count);
  return g;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal entanglement of two spin-1 particles with biquadratic exchange"};
  app.require_subcommand(1);
  CliConfig c;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--J", c.J, "bilinear coupling")->check(kFinite);
    sub->add_option("--exchange", c.exchange, "exchange operator")
        ->check(CLI::IsMember({"half-transverse", "isotropic"}));
    sub->add_option("--out", c.out_path, "output file (default: standard output)");
  };
  const auto add_threshold = [&](CLI::App* sub) {
    sub->add_option("--threshold", c.threshold, "entanglement threshold")->check(kFinite);
    sub->add_option("--tol", c.tol, "bisection width")->check(kFinite & CLI::PositiveNumber);
  };

  auto* spectrum = app.add_subcommand("spectrum", "analytic vs numeric energy levels");
  spectrum->add_option("--K", c.K)->required()->check(kFinite);
  spectrum->add_option("--B", c.B)->required()->check(kFinite);
  add_common(spectrum);

  auto* neg = app.add_subcommand("negativity", "negativity of the thermal state at one point");
  neg->add_option("--K", c.K)->required()->check(kFinite);
  neg->add_option("--B", c.B)->required()->check(kFinite);
  neg->add_option("--T", c.T)->required()->check(kFinite);
  add_common(neg);

  auto* sweep_cmd = app.add_subcommand("sweep", "negativity over a (K, B, T) grid");
  sweep_cmd->add_option("--K", c.K)->check(kFinite);
  sweep_cmd->add_option("--B", c.B)->check(kFinite);
  sweep_cmd->add_option("--T", c.T)->check(kFinite);
  sweep_cmd->add_option("--K-range", c.K_range)->check(kGridSpec);
  sweep_cmd->add_option("--B-range", c.B_range)->check(kGridSpec);
  sweep_cmd->add_option("--T-range", c.T_range)->check(kGridSpec);
  add_common(sweep_cmd);

  auto* figure = app.add_subcommand("figure", "data tables for the three negativity figures");
  figure->add_option("n", c.figure, "figure number")->required()->check(CLI::Range(1, 3));
  figure->add_option("--K-range", c.K_range)->check(kGridSpec);
  figure->add_option("--B-range", c.B_range)->check(kGridSpec);
  figure->add_option("--T-range", c.T_range)->check(kGridSpec);
  figure->add_option("--out", c.out_path, "output file (default: standard output)");

  auto* cfield = app.add_subcommand("critical-field", "field where entanglement vanishes");
  cfield->add_option("--K", c.K)->required()->check(kFinite);
  cfield->add_option("--T", c.T)->required()->check(kFinite);
  add_common(cfield);
  add_threshold(cfield);

  auto* ctemp = app.add_subcommand("critical-temp", "temperature crossings of the entanglement threshold");
  ctemp->add_option("--K", c.K)->required()->check(kFinite);
  ctemp->add_option("--B", c.B)->required()->check(kFinite);
  add_common(ctemp);
  add_threshold(ctemp);

  auto* ccoupling = app.add_subcommand("critical-coupling", "smallest |K| with entanglement");
  ccoupling->add_option("--T", c.T)->required()->check(kFinite);
  ccoupling->add_option("--B", c.B)->check(kFinite);
  add_common(ccoupling);
  add_threshold(ccoupling);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ostringstream buffer;
  CsvWriter csv(buffer);
  try {
    if (*spectrum) {
      emit_spectrum(c, csv);
    } else if (*neg) {
      const double k = *c.K, b = *c.B, t = *c.T;
      csv.header({"K", "B", "T", "N"});
      csv.row(std::vector<double>{k, b, t, thermal_negativity({k, b, c.J, exchange_form(c)}, t)});
    } else if (*sweep_cmd) {
      SweepSpec spec{axis(c.K_range, c.K, "K"), axis(c.B_range, c.B, "B"), axis(c.T_range, c.T, "T"), c.J,
                     exchange_form(c)};
      emit_sweep(spec, csv);
    } else if (*figure) {
      emit_figure(c, csv);
    } else if (*cfield) {
      const auto p = critical_field(*c.K, *c.T, critical_options(c));
      csv.header(kCriticalHeader);
      csv.row(critical_row(p, "upper"));
    } else if (*ctemp) {
      const auto r = critical_temperature(*c.K, *c.B, critical_options(c));
      csv.header(kCriticalHeader);
      for (const auto& p : r.crossings) {
        std::string kind = p.entangled_below ? "upper" : "lower";
        csv.row(critical_row(p, kind));
      }
    } else if (*ccoupling) {
      const auto p = critical_coupling(*c.T, c.B.value_or(0.0), critical_options(c));
      csv.header(kCriticalHeader);
      csv.row(critical_row(p, "lower"));
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  if (c.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << c.out_path << '\n';
      return kExitUsage;
    }
    file << buffer.str();
  }
  return kExitOk;
}

}  // namespace qutrit::cli
