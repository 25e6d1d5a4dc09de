// Command-line front end.  Every subcommand reads JSON, runs one pipeline,
// and emits deterministic JSON (and, where a table is the natural product, a
// CSV side file).  Warnings never change the exit status; they are collected
// into a "diagnostics" array.  Exit status 1 means a domain or input error,
// reported on stderr as "error-code: message".

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "momentbc/chebyshev.hpp"
#include "momentbc/debranges.hpp"
#include "momentbc/determinacy.hpp"
#include "momentbc/error.hpp"
#include "momentbc/io.hpp"
#include "momentbc/jacobi_sim.hpp"
#include "momentbc/linalg.hpp"
#include "momentbc/measure.hpp"
#include "momentbc/moments.hpp"
#include "momentbc/recovery.hpp"

namespace {

using namespace momentbc;

struct Args {
  std::string in;
  std::string out;
  std::string csv;
  std::string backend;
  std::string format = "json";
  std::string problem;
  std::string z_text = "0";
  std::string lambda_text = "0";
  int order = 0;
  int tmax = 0;
  double tol = 0;
  bool grid = false;
  double grid_min = -2.0;
  double grid_max = 2.0;
  double grid_step = 0.25;
};

int env_threads() {
  const char* v = std::getenv("MOMENTBC_THREADS");
  if (v == nullptr) return 1;
  const int n = std::atoi(v);
  return n >= 1 ? n : 1;
}

io::Backend pick_backend(const nlohmann::json& doc, const std::string& flag) {
  if (!flag.empty()) return io::parse_backend(flag);
  if (doc.is_object() && doc.contains("backend") && doc["backend"].is_string())
    return io::parse_backend(doc["backend"].get<std::string>());
  return io::Backend::f64;
}

// Run fn with a value of the scalar type selected by the backend.
template <class Fn>
std::string with_backend(io::Backend b, Fn&& fn) {
  if (b == io::Backend::rational) return fn(Rational(0));
  return fn(0.0);
}

void deliver(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text << "\n";
  else
    io::write_text_file(path, text + "\n");
}

std::string csv_number(double v) { return format_double(v); }

template <class T>
double max_relative_defect(const std::vector<T>& want, const std::vector<T>& got) {
  double worst = 0;
  for (std::size_t t = 0; t < want.size() && t < got.size(); ++t) {
    const double w = scalar_traits<T>::to_double(want[t]);
    const double g = scalar_traits<T>::to_double(got[t]);
    worst = std::max(worst, std::abs(g - w) / std::max(1.0, std::abs(w)));
  }
  return worst;
}

void emit_header(io::JsonWriter& w, const char* command, io::Backend backend) {
  w.key("schema");
  w.string_value(io::kSchema);
  w.key("command");
  w.string_value(command);
  w.key("backend");
  w.string_value(io::backend_name(backend));
}

void emit_diagnostics(io::JsonWriter& w, const std::vector<std::string>& notes) {
  w.key("diagnostics");
  w.begin_array();
  for (const auto& n : notes) w.string_value(n);
  w.end_array();
}

// --- check ------------------------------------------------------------------

std::string run_check(const Args& args) {
  const nlohmann::json doc = io::load_json_file(args.in);
  const io::Backend backend = pick_backend(doc, args.backend);
  return with_backend(backend, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    const std::vector<T> s = io::parse_sequence<T>(doc, "moments");
    const int max_order =
        args.order > 0 ? args.order : max_assessable_order(s.size());
    const Classification verdicts = classify(s, max_order);
    io::JsonWriter w;
    w.begin_object();
    emit_header(w, "check", backend);
    w.key("max_order");
    w.int_value(max_order);
    w.key("orders");
    w.begin_array();
    for (const OrderAssessment& a : verdicts.orders) {
      w.begin_object();
      w.key("order");
      w.int_value(a.order);
      w.key("shift0");
      w.string_value(verdict_name(a.s0));
      if (a.s1) {
        w.key("shift1");
        w.string_value(verdict_name(*a.s1));
      }
      if (a.s0_minus_s1) {
        w.key("difference");
        w.string_value(verdict_name(*a.s0_minus_s1));
      }
      w.end_object();
    }
    w.end_array();
    w.key("verdict");
    w.string_value(feasibility_name(verdicts.verdict, verdicts.failure_order));
    w.key("failure_order");
    w.int_value(verdicts.failure_order);
    emit_diagnostics(w, verdicts.warnings);
    w.end_object();
    return w.str();
  });
}

// --- transform ----------------------------------------------------------------

std::string run_transform(const Args& args) {
  if (args.in.empty()) {
    // No input file: print the triangular basis-change matrix itself.
    if (args.order < 1)
      raise(ErrorCode::invalid_argument, "transform without --in needs --order >= 1");
    io::JsonWriter w;
    w.begin_object();
    emit_header(w, "transform", io::Backend::f64);
    w.key("order");
    w.int_value(args.order);
    w.key("matrix");
    w.begin_array();
    for (int i = 0; i < args.order; ++i) {
      w.begin_array();
      for (int j = 0; j < args.order; ++j)
        w.raw_number(std::to_string(cheb_coefficient_entry(i, j)));
      w.end_array();
    }
    w.end_array();
    w.end_object();
    return w.str();
  }
  const nlohmann::json doc = io::load_json_file(args.in);
  const io::Backend backend = pick_backend(doc, args.backend);
  return with_backend(backend, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    io::JsonWriter w;
    w.begin_object();
    emit_header(w, "transform", backend);
    if (doc.contains("moments")) {
      const std::vector<T> s = io::parse_sequence<T>(doc, "moments");
      w.key("direction");
      w.string_value("moments-to-response");
      w.key("order");
      w.int_value(static_cast<int>(s.size()));
      w.key("moments");
      w.sequence(s);
      w.key("response");
      w.sequence(moments_to_response(s));
    } else if (doc.contains("response")) {
      const std::vector<T> r = io::parse_sequence<T>(doc, "response");
      w.key("direction");
      w.string_value("response-to-moments");
      w.key("order");
      w.int_value(static_cast<int>(r.size()));
      w.key("response");
      w.sequence(r);
      w.key("moments");
      w.sequence(response_to_moments(r));
    } else {
      raise(ErrorCode::parse_error, "transform input needs 'moments' or 'response'");
    }
    w.end_object();
    return w.str();
  });
}

// --- operators ----------------------------------------------------------------

std::string run_operators(const Args& args) {
  if (args.order < 1) raise(ErrorCode::invalid_argument, "operators needs --order >= 1");
  const nlohmann::json doc = io::load_json_file(args.in);
  const io::Backend backend = pick_backend(doc, args.backend);
  return with_backend(backend, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    const std::vector<T> s = io::parse_sequence<T>(doc, "moments");
    if (s.size() < static_cast<std::size_t>(2 * args.order))
      raise(ErrorCode::insufficient_moments,
            "operators at order " + std::to_string(args.order) + " need " +
                std::to_string(2 * args.order) + " moments, have " + std::to_string(s.size()));
    const std::vector<T> head(s.begin(), s.begin() + 2 * args.order);
    const std::vector<T> r = moments_to_response(head);
    io::JsonWriter w;
    w.begin_object();
    emit_header(w, "operators", backend);
    w.key("order");
    w.int_value(args.order);
    w.key("response");
    w.sequence(r);
    w.key("connecting");
    w.matrix(connecting_operator(r, args.order));
    w.key("weighted");
    w.matrix(weighted_connecting_operator(r, args.order));
    w.key("response_matrix");
    w.matrix(response_matrix(r, args.order));
    w.end_object();
    return w.str();
  });
}

// --- solve --------------------------------------------------------------------

template <class T>
void emit_step_function_csv(const DiscreteMeasure<T>& mu, const std::string& path) {
  std::string text = "# schema: momentbc/1\nlambda,cumulative_mass\n";
  double mass = 0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    mass += scalar_traits<T>::to_double(mu.weights[k]);
    text += csv_number(scalar_traits<T>::to_double(mu.atoms[k]));
    text += ',';
    text += csv_number(mass);
    text += '\n';
  }
  io::write_text_file(path, text);
}

std::string run_solve(const Args& args) {
  if (args.order < 1) raise(ErrorCode::invalid_argument, "solve needs --order >= 1");
  const nlohmann::json doc = io::load_json_file(args.in);
  const io::Backend backend = pick_backend(doc, args.backend);
  return with_backend(backend, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    const std::vector<T> s = io::parse_sequence<T>(doc, "moments");
    std::vector<std::string> notes;
    const std::size_t need = static_cast<std::size_t>(2 * args.order);
    if (s.size() > need)
      notes.push_back("ignoring " + std::to_string(s.size() - need) +
                      " trailing moments beyond index " + std::to_string(need - 1));
    RecoveryOptions opts;
    if (args.tol > 0) opts.pencil.tol = args.tol;
    PencilDiagnostics diag;
    const DiscreteMeasure<T> mu = solve_truncated<T>(s, args.order, opts, &diag);
    for (const auto& warning : diag.warnings) notes.push_back(warning);
    const std::vector<T> reproduced = moments_of_measure(mu, static_cast<int>(need));
    const std::vector<T> head(s.begin(), s.begin() + need);
    io::JsonWriter w;
    w.begin_object();
    emit_header(w, "solve", backend);
    w.key("order");
    w.int_value(args.order);
    w.key("atoms");
    w.sequence(mu.atoms);
    w.key("weights");
    w.sequence(mu.weights);
    w.key("norming_constants");
    w.begin_array();
    for (std::size_t k = 0; k < mu.size(); ++k) w.scalar_value(mu.rho(k));
    w.end_array();
    w.key("reproduced_moments");
    w.sequence(reproduced);
    w.key("max_relative_moment_error");
    w.double_value(max_relative_defect(head, reproduced));
    w.key("condition_estimate");
    w.double_value(diag.condition_estimate);
    w.key("extended_precision_used");
    w.bool_value(diag.extended_precision_used);
    emit_diagnostics(w, notes);
    w.end_object();
    if (!args.csv.empty()) emit_step_function_csv(mu, args.csv);
    return w.str();
  });
}

// --- simulate -------------------------------------------------------------------

template <class T>
void emit_field_csv(const WaveField<T>& field, const std::string& path) {
  std::string text = "# schema: momentbc/1\nn,t,value\n";
  for (int t = 0; t <= field.horizon(); ++t)
    for (int n = 0; n <= field.sites() + 1; ++n) {
      text += std::to_string(n);
      text += ',';
      text += std::to_string(t);
      text += ',';
      text += csv_number(scalar_traits<T>::to_double(field.v(n, t)));
      text += '\n';
    }
  io::write_text_file(path, text);
}

std::string run_simulate(const Args& args) {
  const nlohmann::json doc = io::load_json_file(args.in);
  const io::Backend backend = pick_backend(doc, args.backend);
  return with_backend(backend, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    const JacobiCoefficients<T> system = io::parse_jacobi_as<T>(doc);
    int horizon = args.tmax;
    if (horizon <= 0 && doc.contains("T")) {
      if (!doc["T"].is_number_integer())
        raise(ErrorCode::parse_error, "'T' must be an integer");
      horizon = doc["T"].get<int>();
    }
    if (horizon <= 0)
      raise(ErrorCode::parse_error, "simulate needs a positive horizon ('T' or --tmax)");
    std::vector<T> control{T(1)};
    bool custom_control = false;
    if (doc.contains("control") && !(doc["control"].is_string() &&
                                     doc["control"].get<std::string>() == "delta")) {
      control = io::parse_sequence<T>(doc, "control");
      custom_control = true;
    }
    const std::vector<T> r = response_by_simulation(system, horizon);
    io::JsonWriter w;
    w.begin_object();
    emit_header(w, "simulate", backend);
    w.key("sites");
    w.int_value(system.sites());
    w.key("horizon");
    w.int_value(horizon);
    w.key("response");
    w.sequence(r);
    const WaveField<T> field = simulate(system, control, horizon);
    if (custom_control) {
      std::vector<T> trace;
      for (int t = 1; t <= horizon; ++t) trace.push_back(field.v(1, t));
      w.key("trace");
      w.sequence(trace);
    }
    w.end_object();
    if (!args.csv.empty()) emit_field_csv(field, args.csv);
    return w.str();
  });
}

// --- kernel ---------------------------------------------------------------------

std::string kernel_grid_csv(const Args& args) {
  const nlohmann::json doc = io::load_json_file(args.in);
  const io::Backend backend = pick_backend(doc, args.backend);
  if (!(args.grid_step > 0) || args.grid_max < args.grid_min)
    raise(ErrorCode::invalid_argument, "kernel grid needs min <= max and step > 0");
  return with_backend(backend, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    const std::vector<T> s = io::parse_sequence<T>(doc, "moments");
    std::string text = "# schema: momentbc/1\nlambda,kernel_diagonal,kappa\n";
    for (double x = args.grid_min; x <= args.grid_max + args.grid_step / 2;
         x += args.grid_step) {
      const T lambda = scalar_traits<T>::from_double(x);
      const ChristoffelValue<T> cv = christoffel(s, args.order, lambda);
      text += csv_number(x);
      text += ',';
      text += csv_number(scalar_traits<T>::to_double(cv.kernel_diagonal));
      text += ',';
      text += csv_number(scalar_traits<T>::to_double(cv.kappa));
      text += '\n';
    }
    return text;
  });
}

std::string run_kernel(const Args& args) {
  if (args.order < 1) raise(ErrorCode::invalid_argument, "kernel needs --order >= 1");
  const nlohmann::json doc = io::load_json_file(args.in);
  const io::Backend backend = pick_backend(doc, args.backend);
  return with_backend(backend, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    const std::vector<T> s = io::parse_sequence<T>(doc, "moments");
    const T z = io::parse_scalar_text<T>(args.z_text);
    const T lambda = io::parse_scalar_text<T>(args.lambda_text);
    const T bilinear = reproducing_kernel(s, args.order, z, lambda, KernelForm::bilinear);
    const T det_form = reproducing_kernel(s, args.order, z, lambda, KernelForm::determinant);
    const ChristoffelValue<T> cv = christoffel(s, args.order, lambda);
    io::JsonWriter w;
    w.begin_object();
    emit_header(w, "kernel", backend);
    w.key("order");
    w.int_value(args.order);
    w.key("z");
    w.scalar_value(z);
    w.key("lambda");
    w.scalar_value(lambda);
    w.key("kernel");
    w.scalar_value(bilinear);
    w.key("kernel_diagonal");
    w.scalar_value(cv.kernel_diagonal);
    w.key("kappa");
    w.scalar_value(cv.kappa);
    w.key("forms_residual");
    w.double_value(std::abs(scalar_traits<T>::to_double(bilinear - det_form)));
    w.end_object();
    return w.str();
  });
}

// --- determinacy ----------------------------------------------------------------

template <class T>
std::string hamburger_csv(const DeterminacyReport<HamburgerRow<T>>& report) {
  std::string text = "# schema: momentbc/1\norder,q1,q2,ratio1,ratio2,sign_match,monotone_ok\n";
  for (const auto& row : report.rows) {
    text += std::to_string(row.order);
    text += ',' + csv_number(scalar_traits<T>::to_double(row.q1));
    text += ',' + csv_number(scalar_traits<T>::to_double(row.q2));
    text += ',' + csv_number(scalar_traits<T>::to_double(row.ratio1));
    text += ',' + csv_number(scalar_traits<T>::to_double(row.ratio2));
    text += row.sign_match ? ",1" : ",0";
    text += row.monotone_ok ? ",1\n" : ",0\n";
  }
  return text;
}

template <class T>
std::string stieltjes_csv(const DeterminacyReport<StieltjesRow<T>>& report) {
  std::string text = "# schema: momentbc/1\norder,m,l,xi,ratio1,ratio2,sign_match,monotone_ok\n";
  for (const auto& row : report.rows) {
    text += std::to_string(row.order);
    text += ',' + csv_number(scalar_traits<T>::to_double(row.m));
    text += ',' + csv_number(scalar_traits<T>::to_double(row.l));
    text += ',' + csv_number(scalar_traits<T>::to_double(row.xi));
    text += ',' + csv_number(scalar_traits<T>::to_double(row.ratio1));
    text += ',' + csv_number(scalar_traits<T>::to_double(row.ratio2));
    text += row.sign_match ? ",1" : ",0";
    text += row.monotone_ok ? ",1\n" : ",0\n";
  }
  return text;
}

template <class Report>
std::string determinacy_json(const Args& args, io::Backend backend, const Report& report) {
  io::JsonWriter w;
  w.begin_object();
  emit_header(w, "determinacy", backend);
  w.key("problem");
  w.string_value(args.problem);
  w.key("tmax");
  w.int_value(args.tmax);
  w.key("rows_computed");
  w.int_value(static_cast<int>(report.rows.size()));
  w.key("verdict");
  w.string_value(verdict_name(report.verdict));
  w.key("degenerate_at");
  w.int_value(report.degenerate_at);
  emit_diagnostics(w, report.warnings);
  w.end_object();
  return w.str();
}

std::string run_determinacy(const Args& args, std::string* table_out) {
  if (args.tmax < 1) raise(ErrorCode::invalid_argument, "determinacy needs --tmax >= 1");
  const nlohmann::json doc = io::load_json_file(args.in);
  const io::Backend backend = pick_backend(doc, args.backend);
  return with_backend(backend, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    const std::vector<T> s = io::parse_sequence<T>(doc, "moments");
    DeterminacyOptions opts;
    opts.threads = env_threads();
    if (args.problem == "hamburger") {
      const auto report = hamburger_report(s, args.tmax, opts);
      *table_out = hamburger_csv(report);
      return determinacy_json(args, backend, report);
    }
    if (args.problem == "stieltjes") {
      const auto report = stieltjes_report(s, args.tmax, opts);
      *table_out = stieltjes_csv(report);
      return determinacy_json(args, backend, report);
    }
    raise(ErrorCode::invalid_argument, "unknown problem '" + args.problem + "'");
  });
}

// --- roundtrip ------------------------------------------------------------------

std::string run_roundtrip(const Args& args) {
  const nlohmann::json doc = io::load_json_file(args.in);
  const io::Backend backend = pick_backend(doc, args.backend);
  return with_backend(backend, [&](auto tag) {
    using T = std::decay_t<decltype(tag)>;
    const JacobiCoefficients<T> system = io::parse_jacobi_as<T>(doc);
    const int sites = system.sites();
    const std::vector<T> r = response_by_simulation(system, 2 * sites);
    const std::vector<T> s = response_to_moments(r);
    RecoveryOptions opts;
    if (args.tol > 0) opts.pencil.tol = args.tol;
    PencilDiagnostics diag;
    const DiscreteMeasure<T> mu = solve_truncated<T>(s, sites, opts, &diag);
    const std::vector<T> reproduced = moments_of_measure(mu, 2 * sites);
    io::JsonWriter w;
    w.begin_object();
    emit_header(w, "roundtrip", backend);
    w.key("sites");
    w.int_value(sites);
    w.key("moments");
    w.sequence(s);
    w.key("atoms");
    w.sequence(mu.atoms);
    w.key("weights");
    w.sequence(mu.weights);
    w.key("reproduced_moments");
    w.sequence(reproduced);
    w.key("max_relative_error");
    w.double_value(max_relative_defect(s, reproduced));
    emit_diagnostics(w, diag.warnings);
    w.end_object();
    return w.str();
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated moment problems via boundary control"};
  app.require_subcommand(1);
  Args args;

  auto add_io = [&](CLI::App* cmd, bool need_in) {
    auto* in = cmd->add_option("--in", args.in, "input JSON file");
    if (need_in) in->required();
    cmd->add_option("--out", args.out, "output file (default stdout)");
    cmd->add_option("--backend", args.backend, "f64 or rational (overrides input file)");
  };

  CLI::App* check = app.add_subcommand("check", "classify moment data by feasibility");
  add_io(check, true);
  check->add_option("--order", args.order, "cap the assessed order");

  CLI::App* transform = app.add_subcommand("transform", "moments <-> response entries");
  add_io(transform, false);
  transform->add_option("--order", args.order, "emit the basis-change matrix of this order");

  CLI::App* operators = app.add_subcommand("operators", "dump connecting/weighted operators");
  add_io(operators, true);
  operators->add_option("--order", args.order, "operator order")->required();

  CLI::App* solve = app.add_subcommand("solve", "recover an atomic measure from moments");
  add_io(solve, true);
  solve->add_option("--order", args.order, "number of atoms")->required();
  solve->add_option("--tol", args.tol, "eigensolver tolerance override");
  solve->add_option("--csv", args.csv, "also write the step function as CSV");

  CLI::App* simulate = app.add_subcommand("simulate", "run the lattice wave system");
  add_io(simulate, true);
  simulate->add_option("--tmax", args.tmax, "time horizon (overrides input 'T')");
  simulate->add_option("--csv", args.csv, "also write the full field as CSV");

  CLI::App* kernel = app.add_subcommand("kernel", "reproducing kernel and extremal mass");
  add_io(kernel, true);
  kernel->add_option("--order", args.order, "space order")->required();
  kernel->add_option("--z", args.z_text, "first kernel argument");
  kernel->add_option("--lambda", args.lambda_text, "second kernel argument");
  kernel->add_flag("--grid", args.grid, "emit a CSV over a lattice instead");
  kernel->add_option("--grid-min", args.grid_min, "lattice start");
  kernel->add_option("--grid-max", args.grid_max, "lattice end");
  kernel->add_option("--grid-step", args.grid_step, "lattice step");

  CLI::App* determinacy = app.add_subcommand("determinacy", "uniqueness-evidence ladders");
  add_io(determinacy, true);
  determinacy->add_option("--problem", args.problem, "hamburger or stieltjes")->required();
  determinacy->add_option("--tmax", args.tmax, "ladder depth")->required();
  determinacy->add_option("--csv", args.csv, "write the ladder table as CSV");
  determinacy->add_option("--format", args.format, "json (default) or csv on stdout");

  CLI::App* roundtrip = app.add_subcommand("roundtrip", "simulate -> moments -> recovery");
  add_io(roundtrip, true);
  roundtrip->add_option("--tol", args.tol, "eigensolver tolerance override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      deliver(run_check(args), args.out);
    } else if (transform->parsed()) {
      deliver(run_transform(args), args.out);
    } else if (operators->parsed()) {
      deliver(run_operators(args), args.out);
    } else if (solve->parsed()) {
      deliver(run_solve(args), args.out);
    } else if (simulate->parsed()) {
      deliver(run_simulate(args), args.out);
    } else if (kernel->parsed()) {
      if (args.grid) {
        const std::string table = kernel_grid_csv(args);
        if (!args.csv.empty())
          io::write_text_file(args.csv, table);
        else if (!args.out.empty())
          io::write_text_file(args.out, table);
        else
          std::cout << table;
      } else {
        deliver(run_kernel(args), args.out);
      }
    } else if (determinacy->parsed()) {
      std::string table;
      const std::string report = run_determinacy(args, &table);
      if (!args.csv.empty()) io::write_text_file(args.csv, table);
      if (args.format == "csv" && args.csv.empty())
        std::cout << table;
      else
        deliver(report, args.out);
    } else if (roundtrip->parsed()) {
      deliver(run_roundtrip(args), args.out);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
