#include "lerch/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "lerch/bergman.hpp"
#include "lerch/cli/settings.hpp"
#include "lerch/core.hpp"
#include "lerch/error.hpp"
#include "lerch/parallel.hpp"
#include "lerch/random_model.hpp"
#include "lerch/search.hpp"

namespace lerch::cli {
namespace {

using nlohmann::json;

constexpr std::string_view kUsage = R"(usage: lerchlab <command> [--config FILE] [--key value ...]

commands:
  eval     value or derivative of L(s; alpha, lambda)
  scan     vertical shift search for joint approximation
  probe    dense-image probe of (L, L', ..., L^(N-1))
  random   random-phase model samples
  bergman  windowed-sum divergence diagnostic
  phi      exponential sum sum_{n <= t} e(theta n)

Run 'lerchlab <command> --help' for the keys of a command.
)";

struct Command {
  std::string_view name;
  std::vector<std::string_view> keys;
  std::string_view help;
  std::function<void(Settings&, std::ostream&, std::ostream&)> body;
};

json config_json(const Settings& s) {
  json j = json::object();
  for (const auto& [k, v] : s.effective()) j[k] = v;
  return j;
}

std::string csv_header(const Settings& s) {
  std::string h;
  for (const auto& [k, v] : s.effective()) h += "#@ " + k + " = " + v + "\n";
  return h;
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

void emit(Settings& s, const std::string& content, std::ostream& out) {
  const std::string path = s.text("output", "");
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write output file '" + path + "'");
  f << content;
}

std::string format_of(Settings& s) {
  const std::string f = s.text("format", "json");
  if (f != "json" && f != "csv") throw InvalidArgument("format must be json or csv");
  return f;
}

int threads_of(Settings& s) {
  const std::int64_t t = s.integer("threads", std::to_string(default_threads()));
  if (t < 1 || t > 4096) throw InvalidArgument("threads must be in [1, 4096]");
  return static_cast<int>(t);
}

std::vector<LerchParameters> params_of(Settings& s, const std::string& alpha_default = "1/pi") {
  const double alpha = s.number("alpha", alpha_default);
  const auto lambdas = parse_number_list(s.text("lambda", "1"));
  if (lambdas.empty()) throw InvalidArgument("lambda list is empty");
  std::vector<LerchParameters> out;
  for (const double l : lambdas) out.push_back(LerchParameters::make(alpha, l));
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// eval ---------------------------------------------------------------------

void cmd_eval(Settings& s, std::ostream& out, std::ostream&) {
  s.required("sigma");
  const StripPoint pt{s.number("sigma", ""), s.number("t", "0")};
  const LerchParameters p = LerchParameters::make(s.number("alpha", "1/pi"), s.number("lambda", "1"));
  const std::int64_t k = s.integer("deriv", "0");
  const double target = s.number("precision", "1e-10");
  const std::string fmt = format_of(s);
  if (k < 0 || k > 12) throw InvalidArgument("deriv must be in [0, 12]");
  const auto r = eval_derivative(pt, p, static_cast<int>(k), target);
  if (fmt == "csv") {
    emit(s,
         csv_header(s) + "re,im,abs_error_bound,terms_used\n" + format_double(r.value.real()) + "," +
             format_double(r.value.imag()) + "," + format_double(r.abs_error_bound) + "," +
             std::to_string(r.terms_used) + "\n",
         out);
    return;
  }
  json j{{"config", config_json(s)},
         {"value", complex_json(r.value)},
         {"abs_error_bound", r.abs_error_bound},
         {"terms_used", r.terms_used}};
  emit(s, dump(j), out);
}

// scan ---------------------------------------------------------------------

void cmd_scan(Settings& s, std::ostream& out, std::ostream& err) {
  JointTarget tgt;
  tgt.params = params_of(s);
  const int boundary = static_cast<int>(s.integer("boundary_samples", "256"));
  const int interior = static_cast<int>(s.integer("interior_samples", "64"));
  for (std::size_t j = 1; j <= tgt.params.size(); ++j) {
    const std::string idx = std::to_string(j);
    CompactSet set(parse_shape(s.required("set." + idx)), boundary, interior);
    const auto coeffs = parse_complex_list(s.required("target." + idx));
    if (coeffs.empty()) throw InvalidArgument("target." + idx + " has no coefficients");
    tgt.components.push_back({set, Polynomial(coeffs, set.center())});
  }
  tgt.validate();
  ScanConfig cfg;
  cfg.epsilon = s.number("epsilon", "0.5");
  cfg.tau_max = s.number("tau_max", "1000");
  cfg.tau_step = s.number("tau_step", "0.05");
  cfg.refine = s.boolean("refine", "false");
  cfg.threads = threads_of(s);
  cfg.validate();
  const std::string fmt = format_of(s);
  const std::string trace_path = s.text("trace", "");

  ScanTrace trace;
  const DensityReport rep = scan(tgt, cfg, &trace);

  if (!trace_path.empty()) {
    std::ofstream f(trace_path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write trace file '" + trace_path + "'");
    f << csv_header(s) << "tau,distance\n";
    for (std::size_t j = 0; j < trace.distance.size(); ++j) {
      f << format_double(trace.tau(static_cast<std::int64_t>(j))) << ','
        << format_double(trace.distance[j]) << '\n';
    }
  }

  std::string content;
  if (fmt == "csv") {
    content = csv_header(s) + "# density = " + format_double(rep.density) +
              "\n# hit_measure = " + format_double(rep.hit_measure) +
              "\n# best_tau = " + format_double(rep.best_tau) +
              "\n# best_distance = " + format_double(rep.best_distance) + "\nlo,hi\n";
    for (const auto& iv : rep.hit_intervals) {
      content += format_double(iv.lo) + "," + format_double(iv.hi) + "\n";
    }
  } else {
    json intervals = json::array();
    for (const auto& iv : rep.hit_intervals) intervals.push_back({iv.lo, iv.hi});
    json report{{"hit_intervals", intervals},
                {"hit_measure", rep.hit_measure},
                {"density", rep.density},
                {"best_tau", rep.best_tau},
                {"best_distance", rep.best_distance},
                {"grid_points", rep.grid_points},
                {"grid_hits", rep.grid_hits},
                {"derivative_bound", std::isfinite(rep.derivative_bound) ? json(rep.derivative_bound)
                                                                         : json(nullptr)}};
    content = dump(json{{"config", config_json(s)}, {"report", report}});
  }
  emit(s, content, out);
  const bool to_file = !s.text("output", "").empty();
  std::ostream& summary = to_file ? out : err;
  summary << "density = " << format_double(rep.density) << "  best_tau = "
          << format_double(rep.best_tau) << "  best_distance = " << format_double(rep.best_distance)
          << "  max|L'| on grid = " << format_double(rep.derivative_bound) << "\n";
}

// probe --------------------------------------------------------------------

void cmd_probe(Settings& s, std::ostream& out, std::ostream&) {
  const auto params = params_of(s);
  const double sigma = s.number("sigma", "0.75");
  const std::int64_t n = s.integer("n", "1");
  const auto target = parse_complex_list(s.required("target"));
  const double eps = s.number("epsilon", "0.1");
  const double t_max = s.number("t_max", "1000");
  const double t_step = s.number("t_step", "0.02");
  const int threads = threads_of(s);
  const std::string fmt = format_of(s);
  if (n < 1 || n > 12) throw InvalidArgument("n must be in [1, 12]");
  const auto r = dense_image_probe(params, sigma, static_cast<int>(n), target, eps, t_max, t_step, threads);
  if (fmt == "csv") {
    emit(s,
         csv_header(s) + "t_best,distance,grid_points,hits\n" + format_double(r.t_best) + "," +
             format_double(r.distance) + "," + std::to_string(r.grid_points) + "," +
             std::to_string(r.hits) + "\n",
         out);
    return;
  }
  emit(s,
       dump(json{{"config", config_json(s)},
                 {"t_best", r.t_best},
                 {"distance", r.distance},
                 {"grid_points", r.grid_points},
                 {"hits", r.hits}}),
       out);
}

// random -------------------------------------------------------------------

void cmd_random(Settings& s, std::ostream& out, std::ostream&) {
  const auto seed = static_cast<std::uint64_t>(s.integer("seed", "0"));
  const std::int64_t n = s.integer("n", "1000");
  const StripPoint pt{s.number("sigma", "0.75"), s.number("t", "0")};
  const LerchParameters p = LerchParameters::make(s.number("alpha", "1/pi"), s.number("lambda", "1"));
  const std::int64_t samples = s.integer("samples", "1");
  const std::string fmt = format_of(s);
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  const RandomSeriesConfig cfg{n, p};
  std::vector<cplx> values(static_cast<std::size_t>(samples));
  for (std::int64_t i = 0; i < samples; ++i) {
    const auto phases = sample_phases(seed + static_cast<std::uint64_t>(i), n);
    values[i] = eval_random_series(pt, cfg, phases);
  }
  double mean_sq = 0.0;
  for (const cplx v : values) mean_sq += std::norm(v);
  mean_sq /= static_cast<double>(samples);
  const double moment = second_moment(cfg, pt);
  const double tail = tail_estimate(cfg, pt);
  if (fmt == "csv") {
    std::string c = csv_header(s) + "# second_moment = " + format_double(moment) +
                    "\n# tail_estimate = " + format_double(tail) + "\nseed,re,im,abs_sq\n";
    for (std::int64_t i = 0; i < samples; ++i) {
      c += std::to_string(seed + static_cast<std::uint64_t>(i)) + "," + format_double(values[i].real()) +
           "," + format_double(values[i].imag()) + "," + format_double(std::norm(values[i])) + "\n";
    }
    emit(s, c, out);
    return;
  }
  json rows = json::array();
  for (std::int64_t i = 0; i < samples; ++i) {
    rows.push_back({{"seed", seed + static_cast<std::uint64_t>(i)},
                    {"re", values[i].real()},
                    {"im", values[i].imag()}});
  }
  emit(s,
       dump(json{{"config", config_json(s)},
                 {"samples", rows},
                 {"mean_abs_sq", mean_sq},
                 {"second_moment", moment},
                 {"tail_estimate", tail}}),
       out);
}

// bergman ------------------------------------------------------------------

void cmd_bergman(Settings& s, std::ostream& out, std::ostream&) {
  const Shape shape = parse_shape(s.required("domain"));
  const std::int64_t q = s.integer("q", std::to_string(BergmanDomain::kDefaultOrder));
  if (q < 8 || q > 512) throw InvalidArgument("q must be in [8, 512]");
  const BergmanDomain dom(shape, static_cast<int>(q));
  const auto params = params_of(s);
  TupleElement g;
  for (std::size_t j = 1; j <= params.size(); ++j) {
    const auto coeffs = parse_complex_list(s.text("g." + std::to_string(j), "1"));
    if (coeffs.empty()) throw InvalidArgument("g." + std::to_string(j) + " has no coefficients");
    g.components.emplace_back(coeffs, dom.center());
  }
  const auto x_grid = parse_number_list(s.required("x_grid"));
  if (x_grid.empty()) throw InvalidArgument("x_grid is empty");
  WindowSpec win;
  const std::int64_t we = s.integer("window_exponent", std::to_string(params.size()));
  if (we < 0 || we > 64) throw InvalidArgument("window_exponent must be in [0, 64]");
  win.exponent = static_cast<int>(we);
  win.scale = s.number("window_scale", "1");
  const int threads = threads_of(s);
  const std::string fmt = format_of(s);
  const auto rows = divergence_diagnostic(g, params, dom, x_grid, win, threads);
  if (fmt == "csv") {
    std::string c = csv_header(s) + "x,S,S1,abs_S2,envelope,cum_sum\n";
    for (const auto& r : rows) {
      c += format_double(r.x) + "," + format_double(r.s) + "," + format_double(r.s1) + "," +
           format_double(r.abs_s2) + "," + format_double(r.envelope) + "," +
           format_double(r.cum_sum) + "\n";
    }
    emit(s, c, out);
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"x", r.x},
                   {"S", r.s},
                   {"S1", r.s1},
                   {"abs_S2", r.abs_s2},
                   {"envelope", r.envelope},
                   {"cum_sum", r.cum_sum},
                   {"n_end", r.n_end}});
  }
  emit(s, dump(json{{"config", config_json(s)}, {"rows", arr}}), out);
}

// phi ----------------------------------------------------------------------

void cmd_phi(Settings& s, std::ostream& out, std::ostream&) {
  const double theta = s.number("theta", "0.5");
  const double t = s.number("t", "0");
  const std::string fmt = format_of(s);
  const cplx v = phi_pair_sum(theta, t);
  if (fmt == "csv") {
    emit(s,
         csv_header(s) + "re,im,abs\n" + format_double(v.real()) + "," + format_double(v.imag()) +
             "," + format_double(std::abs(v)) + "\n",
         out);
    return;
  }
  emit(s,
       dump(json{{"config", config_json(s)}, {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}}),
       out);
}

const std::vector<Command>& commands() {
  static const std::vector<Command> cmds = {
      {"eval",
       {"sigma", "t", "alpha", "lambda", "deriv", "precision", "format", "output"},
       "keys: sigma t alpha lambda deriv(0..12) precision(target abs error) format(json|csv) output\n"
       "prints value, abs_error_bound, terms_used\n",
       cmd_eval},
      {"scan",
       {"alpha", "lambda", "set.", "target.", "boundary_samples", "interior_samples", "epsilon",
        "tau_max", "tau_step", "refine", "threads", "trace", "output", "format"},
       "keys: alpha lambda(list of m) set.J('disk re im r' | 'rect a b c d')\n"
       "      target.J(coefficients in s - center of set J) boundary_samples interior_samples\n"
       "      epsilon tau_max tau_step refine threads trace(CSV tau,distance) output format\n",
       cmd_scan},
      {"probe",
       {"alpha", "lambda", "sigma", "n", "target", "epsilon", "t_max", "t_step", "threads", "output",
        "format"},
       "keys: alpha lambda(list of m) sigma n(N) target(m*N complex values, lambda-major)\n"
       "      epsilon t_max t_step threads output format\n",
       cmd_probe},
      {"random",
       {"seed", "n", "sigma", "t", "alpha", "lambda", "samples", "output", "format"},
       "keys: seed n(truncation N) sigma t alpha lambda samples(consecutive seeds) output format\n",
       cmd_random},
      {"bergman",
       {"domain", "q", "alpha", "lambda", "g.", "x_grid", "window_exponent", "window_scale",
        "threads", "output", "format"},
       "keys: domain('disk re im r' | 'rect a b c d') q alpha lambda(list of m)\n"
       "      g.J(coefficients in s - domain center) x_grid window_exponent window_scale\n"
       "      threads output format; CSV columns x,S,S1,abs_S2,envelope,cum_sum\n",
       cmd_bergman},
      {"phi", {"theta", "t", "output", "format"}, "keys: theta t output format\n", cmd_phi},
  };
  return cmds;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << kUsage;
    return 2;
  }
  const std::string& name = args[0];
  if (name == "--help" || name == "-h" || name == "help") {
    out << kUsage;
    return 0;
  }
  const Command* cmd = nullptr;
  for (const auto& c : commands()) {
    if (c.name == name) cmd = &c;
  }
  if (cmd == nullptr) {
    err << "error: unknown command '" << name << "'\n" << kUsage;
    return 2;
  }
  try {
    Settings s = Settings::parse(args.subspan(1), cmd->keys);
    if (s.help()) {
      out << "usage: lerchlab " << cmd->name << " [--config FILE] [--key value ...]\n" << cmd->help;
      return 0;
    }
    cmd->body(s, out, err);
    return 0;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ComputationError& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lerch::cli
