#include "gtorus/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "gtorus/bargmann.hpp"
#include "gtorus/cli_io.hpp"
#include "gtorus/frames.hpp"
#include "gtorus/localization.hpp"
#include "gtorus/parallel.hpp"
#include "gtorus/theta.hpp"
#include "gtorus/transforms.hpp"
#include "gtorus/window.hpp"

namespace gtorus::cli {

namespace {

constexpr const char* kSynopsis =
    "usage: gtorus <dgt forward|inverse | theta eval|zero | frame check|scan | bergman density|gram | "
    "spectrum restriction | asymptotics sweep> [options]   (--help for details)";

struct Options {
  std::string params;
  std::string points;
  std::string symbol;
  std::string n_list = "4,8,16,32";
  std::string alpha_grid = "0.5";
  std::string mode = "exhaustive";
  std::string out;
  std::string format;
  std::string threads = "1";
  std::string signal;
  std::string window;
  std::string coeffs;
  std::string z;
  std::string disagreements;
  std::string method = "fft";
  int oversample = 8;
  int order = 1;
  int n = 0;
  int k = 0;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  double tau = 1e-7;
  double delta = 0.1;
  double tol = 1e-14;
  std::ostream* err = nullptr;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int thread_count(const Options& o) {
  if (o.threads == "auto") return 0;
  try {
    const int t = std::stoi(o.threads);
    if (t < 1) throw UsageError("--threads must be a positive integer or 'auto'");
    return t;
  } catch (const std::logic_error&) {
    throw UsageError("--threads must be a positive integer or 'auto', got '" + o.threads + "'");
  }
}

std::string format_of(const Options& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "json" && f != "csv") throw UsageError("--format must be json or csv, got '" + f + "'");
  return f;
}

Json provenance(const std::string& command, const Options& o, const GaborParams* params) {
  Json j;
  j["command"] = command;
  j["tool"] = "gtorus";
  j["version"] = GTORUS_VERSION;
  j["seed"] = o.seed;
  j["threads"] = o.threads;
  if (params) j["params"] = params_to_json(*params);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_row(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += format_number(values[i]);
  }
  return s + "\n";
}

std::string tf_header(int d, const char* tail) {
  std::string h;
  for (int i = 1; i <= d; ++i) h += (d == 1 ? std::string("x") : "x" + std::to_string(i)) + ",";
  for (int i = 1; i <= d; ++i) h += (d == 1 ? std::string("xi") : "xi" + std::to_string(i)) + ",";
  return h + tail + "\n";
}

GaborParams require_params(const Options& o) {
  if (o.params.empty()) throw UsageError("--params is required");
  return load_params(o.params);
}

Window window_for(const Options& o, const GaborParams& params) {
  if (o.window.empty()) return Window::gaussian(params);
  return Window::samples(load_signal(o.window, params));
}

std::string cmd_dgt_forward(const Options& o) {
  const GaborParams params = require_params(o);
  if (o.signal.empty()) throw UsageError("--signal is required");
  if (o.method != "fft" && o.method != "direct") throw UsageError("--method must be fft or direct");
  const Signal f = load_signal(o.signal, params);
  const Signal g = periodize_sample(window_for(o, params));
  const DGTCoefficients V = dgt(f, g, o.method == "fft" ? DgtMethod::Fft : DgtMethod::Direct);
  if (format_of(o, "json") == "csv") {
    std::string s = "k,l,re,im\n";
    for (std::size_t k = 0; k < V.side(); ++k) {
      for (std::size_t l = 0; l < V.side(); ++l) {
        const cplx v = V.at(k, l);
        s += std::to_string(k) + "," + std::to_string(l) + "," + format_number(v.real()) + "," +
             format_number(v.imag()) + "\n";
      }
    }
    return s;
  }
  Json j = provenance("dgt forward", o, &params);
  j["method"] = o.method;
  j["layout"] = "flat index k * N^d + l";
  Json values = Json::array();
  for (cplx v : V.values) values.push_back(complex_json(v));
  j["coefficients"] = values;
  return dump(j);
}

std::string cmd_dgt_inverse(const Options& o) {
  const GaborParams params = require_params(o);
  if (o.coeffs.empty()) throw UsageError("--coeffs is required");
  const std::vector<cplx> c = parse_complex_list(read_file(o.coeffs));
  const std::size_t side = params.basis_size();
  if (c.size() != side * side) {
    throw Error(ErrorCode::ShapeMismatch, "expected N^{2d} = " + std::to_string(side * side) +
                                              " coefficients, got " + std::to_string(c.size()));
  }
  DGTCoefficients V{params.dim(), params.samples(), c};
  const Signal f = dgt_inverse(V, periodize_sample(window_for(o, params)));
  if (format_of(o, "json") == "csv") {
    std::string s = "index,re,im\n";
    for (std::size_t n = 0; n < f.size(); ++n) {
      s += std::to_string(n) + "," + format_number(f[n].real()) + "," + format_number(f[n].imag()) + "\n";
    }
    return s;
  }
  Json j = provenance("dgt inverse", o, &params);
  Json values = Json::array();
  for (cplx v : f.coeffs()) values.push_back(complex_json(v));
  j["signal"] = values;
  return dump(j);
}

std::string cmd_theta_eval(const Options& o) {
  const GaborParams params = require_params(o);
  if (o.z.empty()) throw UsageError("--z is required");
  CVector z;
  try {
    z = parse_complex_vector(o.z);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--z: ") + e.what());
  }
  const ThetaEval t = theta_eval(z, params, o.order, o.tol);
  Json j = provenance("theta eval", o, &params);
  j["order"] = o.order;
  j["value_logmag"] = t.value.logmag();
  j["value_phase"] = complex_json(t.value.phase());
  j["radius"] = t.radius;
  j["tail_bound"] = t.tail_bound;
  j["diagnostics"] = {{"rounding_bound", t.rounding_bound}, {"tolerance", o.tol}};
  return dump(j);
}

std::string cmd_theta_zero(const Options& o) {
  const GaborParams params = require_params(o);
  const ThetaZero z = theta_zero_1d(params);
  Json j = provenance("theta zero", o, &params);
  j["z0_re"] = z.z0.z(0).real();
  j["z0_im"] = z.z0.z(0).imag();
  j["diagnostics"] = {{"attempts", z.attempts}, {"weighted_residual", z.weighted_residual}};
  return dump(j);
}

Json parity_json(const ParityResult& p) {
  Json j;
  j["applicable"] = true;
  j["no_frame"] = p.no_frame;
  Json s = Json::array();
  for (Eigen::Index i = 0; i < p.s.size(); ++i) s.push_back(complex_json(p.s(i)));
  j["s"] = s;
  j["lattice_member"] = p.witness.member;
  j["lattice_a"] = p.witness.a;
  j["lattice_b"] = p.witness.b;
  j["max_deviation"] = p.witness.max_deviation;
  if (p.integer_form) {
    j["integer_form"] = *p.integer_form;
  } else {
    j["integer_form"] = nullptr;
  }
  return j;
}

Json guarantees_json(const CountingGuarantees& g) {
  return {{"frame_by_count", g.frame_by_count},
          {"no_frame_by_count", g.no_frame_by_count},
          {"interpolation_by_count", g.interpolation_by_count},
          {"seshadri_interval", Json::array({g.seshadri_lower, g.seshadri_upper})}};
}

std::string cmd_frame_check(const Options& o) {
  const GaborParams params = require_params(o);
  if (o.points.empty()) throw UsageError("--points is required");
  const PointSet D = PointSet::from_samples(params, load_points(o.points, params));
  const FrameReport r = frame_bounds(D, window_for(o, params), params, o.tau);
  Json j = provenance("frame check", o, &params);
  j["K"] = r.K;
  j["distinct"] = D.distinct;
  j["A"] = r.A;
  j["B"] = r.B;
  j["is_frame"] = r.is_frame;
  j["parity"] = r.parity ? parity_json(*r.parity) : Json{{"applicable", false}};
  j["guarantees"] = guarantees_json(r.guarantees);
  j["diagnostics"] = {{"tau", o.tau}, {"ratio", r.B > 0.0 ? r.A / r.B : 0.0}};
  return dump(j);
}

std::string disagreement_csv(const ScanReport& r) {
  std::string s = "subset,ratio,predicate_no_frame,oracle_frame\n";
  for (const ScanDisagreement& d : r.disagreements) {
    std::string subset;
    for (std::size_t i = 0; i < d.subset.size(); ++i) subset += (i ? " " : "") + std::to_string(d.subset[i]);
    s += subset + "," + format_number(d.ratio) + "," + (d.predicate_no_frame ? "1" : "0") + "," +
         (d.oracle_frame ? "1" : "0") + "\n";
  }
  return s;
}

std::string cmd_frame_scan(const Options& o) {
  GaborParams params = require_params(o);
  if (o.n > 0) params = params.with_samples(o.n);
  ScanOptions opts;
  if (o.mode == "exhaustive") {
    opts.mode = ScanMode::Exhaustive;
  } else if (o.mode == "random") {
    opts.mode = ScanMode::Random;
  } else {
    throw UsageError("--mode must be exhaustive or random, got '" + o.mode + "'");
  }
  opts.count = o.count;
  opts.seed = o.seed;
  opts.threads = thread_count(o);
  opts.tau = o.tau;
  const std::size_t K = o.k > 0 ? static_cast<std::size_t>(o.k) : static_cast<std::size_t>(params.samples());
  const ScanReport r = scan_subsets(params, K, opts);
  if (!o.disagreements.empty()) {
    std::ofstream f(o.disagreements, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + o.disagreements + "'");
    f << disagreement_csv(r);
  }
  if (format_of(o, "json") == "csv") return disagreement_csv(r);
  Json j = provenance("frame scan", o, &params);
  j["K"] = r.K;
  j["mode"] = o.mode;
  if (opts.mode == ScanMode::Random) j["count"] = o.count;
  j["subsets"] = r.subsets;
  j["frames"] = r.frames;
  j["applicable"] = r.applicable;
  j["confusion"] = {{"predicate_no_frame_oracle_no_frame", r.confusion[1][0]},
                    {"predicate_no_frame_oracle_frame", r.confusion[1][1]},
                    {"predicate_frame_oracle_no_frame", r.confusion[0][0]},
                    {"predicate_frame_oracle_frame", r.confusion[0][1]}};
  j["disagreements"] = r.disagreements.size();
  j["counting_violations"] = r.counting_violations;
  Json hist = Json::array();
  for (std::size_t b = 0; b < r.margin_histogram.size(); ++b) {
    if (r.margin_histogram[b] == 0) continue;
    Json bin;
    if (b == 0) {
      bin["log10_ratio"] = nullptr;
    } else {
      bin["log10_ratio"] = static_cast<int>(b) - 18;
    }
    bin["count"] = r.margin_histogram[b];
    hist.push_back(bin);
  }
  j["margin_histogram"] = hist;
  j["diagnostics"] = {{"tau", o.tau}, {"min_frame_ratio", r.min_frame_ratio}, {"max_nonframe_ratio", r.max_nonframe_ratio}};
  return dump(j);
}

std::string cmd_bergman_density(const Options& o) {
  const GaborParams params = require_params(o);
  const DensityReport r = bergman_density(params, o.oversample, thread_count(o));
  if (format_of(o, "csv") == "csv") {
    std::string s = tf_header(params.dim(), "rho");
    for (std::size_t i = 0; i < r.rho.size(); ++i) {
      const TFPoint p = density_grid_point(r, params, i);
      std::vector<double> row(p.x.data(), p.x.data() + p.x.size());
      row.insert(row.end(), p.xi.data(), p.xi.data() + p.xi.size());
      row.push_back(r.rho[i]);
      s += csv_row(row);
    }
    return s;
  }
  Json j = provenance("bergman density", o, &params);
  j["integral"] = r.integral;
  j["min"] = r.min;
  j["max"] = r.max;
  j["mean"] = r.mean;
  j["flatness"] = r.flatness;
  j["diagnostics"] = {{"grid_x", r.grid_x}, {"grid_xi", r.grid_xi}, {"oversample", o.oversample},
                      {"target_integral", std::pow(static_cast<double>(params.samples()), params.dim())}};
  return dump(j);
}

std::string cmd_bergman_gram(const Options& o) {
  const GaborParams params = require_params(o);
  QuadratureOptions q;
  q.oversample = o.oversample;
  q.threads = thread_count(o);
  const GramReport r = gram(params, q);
  Json j = provenance("bergman gram", o, &params);
  j["rank"] = r.rank;
  j["c"] = r.c;
  j["offdiag_resid"] = r.offdiag_resid;
  j["diag_spread"] = r.diag_spread;
  j["c_norm_identity"] = r.c_norm_identity;
  j["c_closed_form"] = r.c_closed_form;
  j["diagnostics"] = {{"grid_per_axis", r.grid_per_axis}, {"doubling_change", r.doubling_change}};
  return dump(j);
}

Symbol require_symbol(const Options& o, int d) {
  if (o.symbol.empty()) throw UsageError("--symbol is required");
  return symbol_from_spec(o.symbol, d);
}

std::vector<double> alphas(const Options& o) {
  try {
    return parse_alpha_grid(o.alpha_grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--alpha-grid: ") + e.what());
  }
}

LocalizationOptions localization_options(const Options& o) {
  LocalizationOptions l;
  l.threads = thread_count(o);
  return l;
}

std::string cmd_spectrum_restriction(const Options& o) {
  const GaborParams params = require_params(o);
  const Symbol a = require_symbol(o, params.dim());
  const std::vector<double> grid = alphas(o);
  const RestrictionReport R = restriction_matrix(a, window_for(o, params), params, localization_options(o));
  const SpectrumReport S = spectrum(R.M, grid);
  if (!S.hermitian) *o.err << "warning: non-Hermitian restriction matrix; reporting singular values\n";
  if (format_of(o, "json") == "csv") {
    std::string s = "index,eigenvalue\n";
    for (std::size_t i = 0; i < S.eigenvalues.size(); ++i) {
      s += std::to_string(i) + "," + format_number(S.eigenvalues[i]) + "\n";
    }
    return s;
  }
  Json j = provenance("spectrum restriction", o, &params);
  j["symbol"] = a.description();
  j["hermitian"] = S.hermitian;
  j["non_normal_warning"] = S.non_normal_warning;
  j["trace"] = S.trace;
  j["eigenvalues"] = S.eigenvalues;
  Json counting = Json::array();
  for (const CountSample& c : S.counting) counting.push_back({{"alpha", c.alpha}, {"below", c.below}, {"above", c.above}});
  j["counting"] = counting;
  j["plunge_delta"] = o.delta;
  j["plunge_fraction"] = plunge_fraction(S.eigenvalues, o.delta, a.bound());
  j["diagnostics"] = {{"grid_x", R.grid_x}, {"grid_xi", R.grid_xi}, {"trace_change", R.trace_change},
                      {"doublings", R.doublings}, {"asymmetry", R.asymmetry}};
  return dump(j);
}

std::string cmd_asymptotics_sweep(const Options& o) {
  const GaborParams base = require_params(o);
  const Symbol a = require_symbol(o, base.dim());
  std::vector<int> ns;
  try {
    ns = parse_int_list(o.n_list);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--n-list: ") + e.what());
  }
  const SweepReport r = asymptotic_sweep(a, ns, base.config(), alphas(o), o.delta, localization_options(o));
  if (format_of(o, "csv") == "csv") {
    std::ostringstream s;
    s << "# gtorus " << GTORUS_VERSION << " asymptotics sweep\n";
    s << "# symbol: " << a.description() << "\n";
    s << "# params: " << params_to_json(base).dump() << " (N taken from the list)\n";
    s << "# plunge_delta: " << format_number(o.delta) << "\n";
    for (const auto& [N, c] : r.closed_form_constants) s << "# closed_form_constant N=" << N << ": " << format_number(c) << "\n";
    for (const auto& [N, c] : r.trace_changes) s << "# trace_change N=" << N << ": " << format_number(c) << "\n";
    s << "N,trace_norm,target_integral,alpha,count_norm,target_volume,plunge_fraction\n";
    for (const SweepRow& row : r.rows) {
      s << row.N << "," << csv_row({row.trace_norm, row.target_integral, row.alpha, row.count_norm, row.target_volume,
                                    row.plunge_fraction});
    }
    return s.str();
  }
  Json j = provenance("asymptotics sweep", o, &base);
  j["symbol"] = a.description();
  Json rows = Json::array();
  for (const SweepRow& row : r.rows) {
    rows.push_back({{"N", row.N},
                    {"trace_norm", row.trace_norm},
                    {"target_integral", row.target_integral},
                    {"alpha", row.alpha},
                    {"count_norm", row.count_norm},
                    {"target_volume", row.target_volume},
                    {"plunge_fraction", row.plunge_fraction}});
  }
  j["rows"] = rows;
  Json consts = Json::array(), changes = Json::array();
  for (const auto& [N, c] : r.closed_form_constants) consts.push_back({{"N", N}, {"value", c}});
  for (const auto& [N, c] : r.trace_changes) changes.push_back({{"N", N}, {"trace_change", c}});
  j["closed_form_constants"] = consts;
  j["diagnostics"] = {{"plunge_delta", o.delta}, {"trace_changes", changes}};
  return dump(j);
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  o.err = &err;
  CLI::App app{"Discrete Gabor transforms, theta functions and localization operators on the flat torus", "gtorus"};
  app.set_version_flag("--version", std::string("gtorus ") + GTORUS_VERSION);
  app.require_subcommand(1);

  std::function<std::string(const Options&)> action;
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help,
                  std::string (*fn)(const Options&)) {
    CLI::App* sub = group->add_subcommand(name, help);
    sub->add_option("--params", o.params, "Parameter file (JSON)");
    sub->add_option("--out", o.out, "Write data here instead of standard output");
    sub->add_option("--format", o.format, "json or csv");
    sub->add_option("--threads", o.threads, "Worker threads or 'auto'");
    sub->add_option("--seed", o.seed, "Seed recorded in the output (and used by random scans)");
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };

  CLI::App* dgt_cmd = app.add_subcommand("dgt", "Discrete Gabor transform")->require_subcommand(1);
  CLI::App* fwd = leaf(dgt_cmd, "forward", "Analysis V_g f[k, l]", cmd_dgt_forward);
  fwd->add_option("--signal", o.signal, "Signal file: JSON [[re,im],...] or CSV index,re,im");
  fwd->add_option("--window", o.window, "Explicit window samples (default Gaussian of params)");
  fwd->add_option("--method", o.method, "fft or direct");
  CLI::App* inv = leaf(dgt_cmd, "inverse", "Synthesis from N^{2d} coefficients", cmd_dgt_inverse);
  inv->add_option("--coeffs", o.coeffs, "Coefficient file, flat index k * N^d + l");
  inv->add_option("--window", o.window, "Explicit window samples (default Gaussian of params)");

  CLI::App* theta_cmd = app.add_subcommand("theta", "Riemann theta functions")->require_subcommand(1);
  CLI::App* ev = leaf(theta_cmd, "eval", "Evaluate theta_order(z, Omega)", cmd_theta_eval);
  ev->add_option("--z", o.z, "Argument as re,im[,re,im...]");
  ev->add_option("--order", o.order, "Order of the theta function")->check(CLI::PositiveNumber);
  ev->add_option("--tol", o.tol, "Relative truncation tolerance");
  leaf(theta_cmd, "zero", "Zero of theta_1(i z, Omega) for d = 1", cmd_theta_zero);

  CLI::App* frame_cmd = app.add_subcommand("frame", "Frame certification")->require_subcommand(1);
  CLI::App* chk = leaf(frame_cmd, "check", "Frame bounds and predicates for a point set", cmd_frame_check);
  chk->add_option("--points", o.points, "Points file: [[k..., l...], ...]");
  chk->add_option("--window", o.window, "Explicit window samples (default Gaussian of params)");
  chk->add_option("--tau", o.tau, "Relative frame threshold");
  CLI::App* scan = leaf(frame_cmd, "scan", "Predicate vs SVD over K-subsets", cmd_frame_scan);
  scan->add_option("--n", o.n, "Override N from the params file");
  scan->add_option("--k", o.k, "Subset size (default N)");
  scan->add_option("--mode", o.mode, "exhaustive or random");
  scan->add_option("--count", o.count, "Number of random draws");
  scan->add_option("--tau", o.tau, "Relative frame threshold");
  scan->add_option("--disagreements", o.disagreements, "Also write disagreements as CSV here");

  CLI::App* berg = app.add_subcommand("bergman", "Bergman density and Gram matrix")->require_subcommand(1);
  leaf(berg, "density", "rho(x, xi) on a grid (CSV x, xi, rho)", cmd_bergman_density)
      ->add_option("--oversample", o.oversample, "Grid points per axis divided by N")
      ->check(CLI::PositiveNumber);
  leaf(berg, "gram", "Gram matrix of the Bargmann basis", cmd_bergman_gram)
      ->add_option("--oversample", o.oversample, "Grid points per axis divided by N")
      ->check(CLI::PositiveNumber);

  CLI::App* spec = app.add_subcommand("spectrum", "Localization operator spectra")->require_subcommand(1);
  CLI::App* res = leaf(spec, "restriction", "Eigenvalues of the restriction operator", cmd_spectrum_restriction);
  res->add_option("--symbol", o.symbol, "Expression, const:c or box:lo,hi,...");
  res->add_option("--alpha-grid", o.alpha_grid, "from:to:step or a single value");
  res->add_option("--delta", o.delta, "Plunge margin");

  CLI::App* asym = app.add_subcommand("asymptotics", "Trace and counting limits")->require_subcommand(1);
  CLI::App* sweep = leaf(asym, "sweep", "Sweep over N", cmd_asymptotics_sweep);
  sweep->add_option("--symbol", o.symbol, "Expression, const:c or box:lo,hi,...");
  sweep->add_option("--n-list", o.n_list, "Comma-separated N values");
  sweep->add_option("--alpha-grid", o.alpha_grid, "from:to:step or a single value");
  sweep->add_option("--delta", o.delta, "Plunge margin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "gtorus " << GTORUS_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << kSynopsis << "\n";
    return 2;
  }

  try {
    const std::string data = action(o);
    if (o.out.empty()) {
      out << data;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw UsageError("cannot write '" + o.out + "'");
      f << data;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << kSynopsis << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    err << "usage error: " << e.what() << "\n" << kSynopsis << "\n";
    return 2;
  }
}

}  // namespace gtorus::cli
