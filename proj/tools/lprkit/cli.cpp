#include "lprkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "lpr/kernel_analysis.hpp"
#include "lpr/lpr_engine.hpp"
#include "lpr/representability.hpp"
#include "lpr/symmetry_lab.hpp"
#include "lprkit/io.hpp"

namespace lprkit {
namespace {

using lpr::Design;

struct RawOptions {
  std::string grid;
  double h = 0.0;
  std::string format = "json";
  std::string output;
  std::string input;
  bool no_center = false;
};

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw UsageError("--grid: expected start:stop:count, got '" + text + "'");
  GridSpec g;
  try {
    std::size_t used = 0;
    g.start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    g.stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    g.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw UsageError("--grid: malformed value '" + text + "'");
  }
  if (g.count < 1) throw UsageError("--grid: count must be at least 1");
  if (!std::isfinite(g.start) || !std::isfinite(g.stop)) throw UsageError("--grid: bounds must be finite");
  return g;
}

std::string_view subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::fit: return "fit";
    case Subcommand::curve: return "curve";
    case Subcommand::kernel: return "kernel";
    case Subcommand::classify: return "classify";
    case Subcommand::decompose: return "decompose";
    case Subcommand::symmetry: return "symmetry";
  }
  return "";
}

lpr::WeightScheme resolve_weight(const std::string& name) {
  if (name.rfind("table:", 0) == 0) return load_weight_table(name.substr(6));
  return lpr::parse_weight_kind(name);
}

Design require_csv_design(const RunConfig& cfg, std::optional<lpr::SampleSet>* samples = nullptr) {
  CsvData data = load_csv(*cfg.input_path);
  if (samples) samples->emplace(std::move(data.samples));
  return std::move(data.design);
}

double bandwidth_for(const RunConfig& cfg, const Design& design, double t) {
  const double h = cfg.h ? *cfg.h : lpr::default_bandwidth(design, t);
  if (!(h > 0.0)) throw lpr::ValidationError("default bandwidth is zero; pass --h");
  return h;
}

Json to_json_spans(const lpr::SignChangeReport& rep) {
  Json spans = Json::array();
  for (const auto& [a, b] : rep.change_spans) spans.push_back(Json::array({a, b}));
  return spans;
}

std::string run_fit(const RunConfig& cfg) {
  std::optional<lpr::SampleSet> samples;
  const Design design = require_csv_design(cfg, &samples);
  const lpr::LprSpec spec{cfg.t, cfg.q, cfg.p, bandwidth_for(cfg, design, cfg.t), resolve_weight(cfg.weight)};
  const lpr::Estimate est = lpr::fit_local_poly(design, *samples, spec);
  Json j;
  j["t"] = spec.t;
  j["q"] = spec.q;
  j["p"] = spec.p;
  j["h"] = spec.h;
  j["estimate"] = est.value;
  j["coefficients"] = est.coefficients;
  return render_json(j);
}

std::string run_curve(const RunConfig& cfg) {
  std::optional<lpr::SampleSet> samples;
  const Design design = require_csv_design(cfg, &samples);
  lpr::LprSpec base{0.0, cfg.q, cfg.p, cfg.h ? *cfg.h : -1.0, resolve_weight(cfg.weight)};
  const auto grid = cfg.grid->points();
  const auto estimates = lpr::estimate_curve(design, *samples, base, grid);
  if (cfg.format == OutputFormat::csv) {
    std::string out = "t,h,estimate\n";
    for (const auto& e : estimates) {
      out += format_double(e.spec.t) + "," + format_double(e.spec.h) + "," + format_double(e.value) + "\n";
    }
    return out;
  }
  Json j;
  j["q"] = cfg.q;
  j["p"] = cfg.p;
  j["weight"] = std::string(base.scheme.name());
  Json pts = Json::array();
  for (const auto& e : estimates) {
    Json row;
    row["t"] = e.spec.t;
    row["h"] = e.spec.h;
    row["estimate"] = e.value;
    row["coefficients"] = e.coefficients;
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  return render_json(j);
}

std::string run_kernel(const RunConfig& cfg) {
  const Design design = require_csv_design(cfg);
  const lpr::LprSpec spec{cfg.t, cfg.q, cfg.p, bandwidth_for(cfg, design, cfg.t), resolve_weight(cfg.weight)};
  const auto kernel = lpr::equivalent_kernel(design, spec);
  const auto poly = lpr::factor_polynomial(design, spec);
  if (cfg.format == OutputFormat::csv) {
    std::string out = "x,kernel\n";
    for (std::size_t i = 0; i < design.size(); ++i) {
      out += format_double(design[i]) + "," + format_double(kernel[i]) + "\n";
    }
    return out;
  }
  return render_json(kernel_json(design, kernel, poly));
}

KernelFile load_kernel_for(const RunConfig& cfg) {
  KernelFile file = load_kernel_json(*cfg.input_path);
  if (cfg.orders_given) {
    file.kernel.q = cfg.q;
    file.kernel.p = cfg.p;
  }
  if (file.kernel.p < 1 || file.kernel.p > lpr::LprSpec::kMaxOrder || file.kernel.q < 0 ||
      file.kernel.q >= file.kernel.p) {
    throw lpr::ValidationError("kernel file: q and p must satisfy 0 <= q < p <= 10");
  }
  return file;
}

std::string run_classify(const RunConfig& cfg) {
  const KernelFile file = load_kernel_for(cfg);
  const auto& k = file.kernel;
  const auto moments = lpr::moment_residuals(k, file.design, k.t, k.q, k.p, cfg.moment_tol);
  const auto changes = lpr::count_sign_changes(k.values, cfg.zero_tol);

  Json j;
  j["t"] = k.t;
  j["q"] = k.q;
  j["p"] = k.p;
  j["h"] = k.h;
  Json m;
  m["tol"] = moments.tol;
  m["residuals"] = moments.residuals;
  m["normalizers"] = moments.normalizers;
  m["passed"] = moments.passed;
  j["moments"] = std::move(m);
  Json s;
  s["zero_tol"] = changes.zero_tol;
  s["count"] = changes.count;
  s["spans"] = to_json_spans(changes);
  j["sign_changes"] = std::move(s);
  j["type_qp"] = moments.passed;
  j["representable"] = moments.passed && changes.count <= static_cast<std::size_t>(k.p - 1);
  return render_json(j);
}

std::string run_decompose(const RunConfig& cfg) {
  const KernelFile file = load_kernel_for(cfg);
  const auto& k = file.kernel;
  const auto rep = lpr::decompose_kernel(k, file.design, k.t, k.q, k.p, {cfg.moment_tol, cfg.zero_tol});
  const auto check = lpr::verify_decomposition(k, rep, file.design, cfg.moment_tol);
  if (!check.passed) {
    throw lpr::SingularSystem("reconstruction residual " + format_double(std::max(check.factor_path_residual,
                                                                                  check.node_path_residual)) +
                              " exceeds tolerance");
  }
  Json j = kernel_json(file.design, k, rep.factor_poly);
  j["weights"] = rep.weights;
  j["nodes"] = rep.nodes.nodes;
  j["s"] = rep.s;
  j["h_poly"] = rep.h_poly.coeffs;
  Json v;
  v["factor_path_residual"] = check.factor_path_residual;
  v["node_path_residual"] = check.node_path_residual;
  v["tol"] = check.tol;
  v["passed"] = check.passed;
  j["verification"] = std::move(v);
  return render_json(j);
}

std::string run_symmetry(const RunConfig& cfg) {
  const double h = cfg.h.value_or(1.0);
  const Design design = cfg.input_path ? require_csv_design(cfg) : lpr::symmetric_design(cfg.t, h, cfg.half_count,
                                                                                         cfg.include_center);
  const double bw = cfg.h ? *cfg.h : (cfg.input_path ? bandwidth_for(cfg, design, cfg.t) : h);
  const auto rep = lpr::compare_weightings(design, cfg.t, bw, cfg.q, cfg.p, lpr::linear_quadratic_schemes(),
                                           cfg.equality_tol);
  Json j;
  j["t"] = rep.t;
  j["q"] = rep.q;
  j["p"] = rep.p;
  j["h"] = rep.h;
  j["design"] = std::vector<double>(design.points().begin(), design.points().end());
  j["symmetric_design"] = rep.symmetric_design;
  j["p_minus_q_even"] = rep.p_minus_q_even;
  Json names = Json::array();
  Json kernels = Json::array();
  Json parity = Json::array();
  for (std::size_t a = 0; a < rep.schemes.size(); ++a) {
    names.push_back(std::string(rep.schemes[a].name()));
    kernels.push_back(rep.kernels[a].values);
    parity.push_back(std::string(lpr::to_string(rep.parity[a])));
  }
  j["schemes"] = std::move(names);
  j["kernels"] = std::move(kernels);
  j["parity"] = std::move(parity);
  j["pairwise_max_diff"] = rep.pairwise_max_diff;
  j["max_kernel"] = rep.max_kernel;
  j["tol"] = rep.tol;
  j["equal"] = rep.equal;
  if (rep.symmetric_design && rep.p_minus_q_even) {
    const auto drop = lpr::degree_drop_check(design, cfg.t, bw, cfg.q, cfg.p);
    Json d;
    d["quadratic_factor"] = drop.quadratic_factor.coeffs;
    d["degree"] = drop.degree;
    d["bound"] = drop.bound;
    d["identity_residual"] = drop.identity_residual;
    d["passed"] = drop.passed;
    j["degree_drop"] = std::move(d);
  }
  return render_json(j);
}

}  // namespace

std::vector<double> GridSpec::points() const {
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    pts.push_back(start);
    return pts;
  }
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) pts.push_back(i == count - 1 ? stop : start + step * i);
  return pts;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  RawOptions raw;
  CLI::App app{"Local polynomial regression and equivalent-kernel toolkit", "lprkit"};
  app.set_help_flag("--help", "Print help");
  app.require_subcommand(1, 1);

  struct Entry {
    Subcommand kind;
    const char* help;
  };
  const Entry entries[] = {
      {Subcommand::fit, "Fit a local polynomial at one point"},
      {Subcommand::curve, "Fit over a grid of estimation points"},
      {Subcommand::kernel, "Export the equivalent kernel and factor polynomial"},
      {Subcommand::classify, "Check moment conditions and sign changes of a kernel file"},
      {Subcommand::decompose, "Recover non-negative local-fit weights from a kernel file"},
      {Subcommand::symmetry, "Compare 1-y, 1+y and 1-y^2 weightings on a symmetric design"},
  };

  std::vector<std::pair<CLI::App*, Subcommand>> subs;
  std::vector<CLI::Option*> order_opts;
  std::vector<CLI::Option*> h_opts;
  std::vector<CLI::Option*> grid_opts;
  std::vector<CLI::Option*> input_opts;
  std::vector<CLI::Option*> output_opts;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(std::string(subcommand_name(e.kind)), e.help);
    input_opts.push_back(sub->add_option("--input", raw.input, "Input CSV (x,y) or kernel JSON file"));
    sub->add_option("--t", cfg.t, "Estimation point");
    order_opts.push_back(sub->add_option("--q", cfg.q, "Derivative order"));
    order_opts.push_back(sub->add_option("--p", cfg.p, "Number of moment conditions (degree p-1)"));
    h_opts.push_back(sub->add_option("--h", raw.h, "Bandwidth"));
    sub->add_option("--weight", cfg.weight, "uniform|linear-minus|linear-plus|quadratic|table:<path>");
    grid_opts.push_back(sub->add_option("--grid", raw.grid, "start:stop:count"));
    sub->add_option("--half-count", cfg.half_count, "Points on each side of t for symmetry");
    sub->add_flag("--no-center", raw.no_center, "Omit the centre point from the symmetric design");
    sub->add_option("--moment-tol", cfg.moment_tol, "Moment-condition tolerance");
    sub->add_option("--zero-tol", cfg.zero_tol, "Relative zero threshold for sign changes");
    sub->add_option("--equality-tol", cfg.equality_tol, "Kernel equality tolerance");
    sub->add_option("--format", raw.format, "json|csv");
    output_opts.push_back(sub->add_option("--output", raw.output, "Output path (default: standard output)"));
    subs.emplace_back(sub, e.kind);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  std::size_t chosen = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].first->parsed()) chosen = i;
  }
  cfg.subcommand = subs[chosen].second;
  cfg.orders_given = order_opts[2 * chosen]->count() > 0 || order_opts[2 * chosen + 1]->count() > 0;
  if (input_opts[chosen]->count() > 0) cfg.input_path = raw.input;
  if (output_opts[chosen]->count() > 0) cfg.output = raw.output;
  if (h_opts[chosen]->count() > 0) {
    if (!(raw.h > 0.0) || !std::isfinite(raw.h)) throw UsageError("--h must be positive");
    cfg.h = raw.h;
  }
  if (grid_opts[chosen]->count() > 0) cfg.grid = parse_grid(raw.grid);
  cfg.include_center = !raw.no_center;

  if (cfg.p < 1 || cfg.p > 10) throw UsageError("--p must be between 1 and 10");
  if (cfg.q < 0) throw UsageError("--q must be non-negative");
  if (cfg.q >= cfg.p) throw UsageError("--q must be smaller than --p");
  if (!std::isfinite(cfg.t)) throw UsageError("--t must be finite");
  if (cfg.half_count < 1) throw UsageError("--half-count must be at least 1");
  if (!(cfg.moment_tol >= 0.0)) throw UsageError("--moment-tol must be non-negative");
  if (!(cfg.zero_tol >= 0.0)) throw UsageError("--zero-tol must be non-negative");
  if (!(cfg.equality_tol >= 0.0)) throw UsageError("--equality-tol must be non-negative");

  if (raw.format == "json") {
    cfg.format = OutputFormat::json;
  } else if (raw.format == "csv") {
    cfg.format = OutputFormat::csv;
  } else {
    throw UsageError("--format must be json or csv");
  }
  if (cfg.format == OutputFormat::csv && cfg.subcommand != Subcommand::curve &&
      cfg.subcommand != Subcommand::kernel) {
    throw UsageError("--format csv is only available for curve and kernel");
  }

  if (cfg.weight.rfind("table:", 0) != 0) {
    try {
      lpr::parse_weight_kind(cfg.weight);
    } catch (const lpr::ValidationError& e) {
      throw UsageError(std::string("--weight: ") + e.what());
    }
  } else if (cfg.weight.size() == 6) {
    throw UsageError("--weight: table: needs a path");
  }

  if (cfg.subcommand != Subcommand::symmetry && !cfg.input_path) {
    throw UsageError("--input is required for " + std::string(subcommand_name(cfg.subcommand)));
  }
  if (cfg.subcommand == Subcommand::curve && !cfg.grid) throw UsageError("--grid is required for curve");
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string result;
  try {
    switch (cfg.subcommand) {
      case Subcommand::fit: result = run_fit(cfg); break;
      case Subcommand::curve: result = run_curve(cfg); break;
      case Subcommand::kernel: result = run_kernel(cfg); break;
      case Subcommand::classify: result = run_classify(cfg); break;
      case Subcommand::decompose: result = run_decompose(cfg); break;
      case Subcommand::symmetry: result = run_symmetry(cfg); break;
    }
  } catch (const lpr::NotRepresentable& e) {
    err << "error: not representable: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const lpr::InconsistentSigns& e) {
    err << "error: inconsistent signs: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const lpr::SingularSystem& e) {
    err << "error: singular system: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const lpr::NotTypeQP& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const lpr::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }

  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot write '" << *cfg.output << "'\n";
      return kExitData;
    }
    file << result;
    if (!file) {
      err << "error: write to '" << *cfg.output << "' failed\n";
      return kExitData;
    }
  } else {
    out << result;
  }
  return kExitOk;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace lprkit
