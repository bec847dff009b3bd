#include "vangle/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "vangle/errors.hpp"
#include "vangle/geom.hpp"
#include "vangle/lab.hpp"
#include "vangle/metrics.hpp"
#include "vangle/specfun.hpp"
#include "vangle/verify.hpp"

namespace vangle {
namespace {

using nlohmann::json;
using Header = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string quoted(const std::string& s) {
  if (s.find_first_of(",;\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string header_text(const Header& h) {
  std::string out;
  for (const auto& [k, v] : h) out += "# " + k + "=" + v + "\n";
  return out;
}

json header_json(const Header& h) {
  json out = json::object();
  for (const auto& [k, v] : h) out[k] = v;
  return out;
}

struct Common {
  std::string format;  // empty: json for verify, csv otherwise
  std::string out_path;
  int digits = 10;
  std::optional<std::uint64_t> seed;
};

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError(std::string(kSeedEnvVar) + " must be an unsigned integer");
    return v;
  }
  return VerifyConfig{}.seed;
}

// Samples lo, lo + step, ... up to hi (inclusive within rounding).
std::vector<double> parse_range(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw UsageError("malformed range '" + spec + "'");
    parts.push_back(v);
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw UsageError("range must be lo:hi:step with lo <= hi and step > 0");
  }
  const long n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  if (n > 10000000) throw UsageError("range has too many points");
  std::vector<double> out;
  for (long i = 0; i < n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return out;
}

MetricResult compute_metric(const std::string& metric, const Domain& g, const Point& x,
                            const Point& y) {
  if (metric == "v") return vam(g, x, y);
  if (metric == "rho") return rho(g, x, y);
  if (metric == "rho_star") return rho_star(g, x, y);
  if (metric == "j") return jmetric(g, x, y);
  if (metric == "k") return qh_distance(g, x, y);
  throw UsageError("unknown metric '" + metric + "' (v, rho, rho_star, j, k)");
}

struct TableFn {
  std::string name;
  std::optional<double> big_k, lipschitz, epsilon;

  double operator()(double x) const {
    if (name == "phiK") {
      if (!big_k) throw UsageError("phiK needs --K");
      return phi(*big_k, x);
    }
    if (name == "mu") return grotzsch_mu(x);
    if (name == "mu_inv") return grotzsch_mu_inv(x);
    if (name == "K") return elliptic_k(x);
    if (name == "E") return elliptic(x).e_value;
    if (const auto id = lemma_function_from_string(name)) {
      return lemma_fn(*id, {big_k, lipschitz, epsilon}, x);
    }
    throw UsageError("unknown function '" + name + "'");
  }
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Visual angle metric toolkit", "vangle"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", common_.format, "csv or json (verify defaults to json)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", common_.out_path, "Write results to this file");
    app.add_option("--digits", common_.digits, "Significant digits in CSV output")
        ->check(CLI::Range(1, 17));
    app.add_option("--seed", seed_, "Random seed (default from $VAM_SEED)");

    CLI::App* compute = app.add_subcommand("compute", "Evaluate a metric at a pair of points");
    compute->add_option("--domain", domain_, "ball:<n>, half:<n> or poly:x1,y1;x2,y2;...")
        ->required();
    compute->add_option("--metric", metric_, "v, rho, rho_star, j or k")->required();
    compute->add_option("--x", x_, "First point, comma-separated")->required();
    compute->add_option("--y", y_, "Second point, comma-separated")->required();

    CLI::App* verify = app.add_subcommand("verify", "Run an inequality suite");
    verify->add_option("--suite", suite_, "Suite name or ALL")->required();
    verify->add_option("--K", config_.k_list, "K values")->delimiter(',');
    verify->add_option("--L", config_.l_list, "L values")->delimiter(',');
    verify->add_option("--eps", config_.eps_list, "epsilon values")->delimiter(',');
    verify->add_option("--grid", config_.r_grid, "Points in the r-grid");
    verify->add_option("--spacing", config_.monotone_spacing, "Monotone grid spacing");
    verify->add_option("--pairs", config_.pair_count, "Random pairs per domain");
    verify->add_option("--qh-pairs", config_.qh_pair_count, "Pairs per domain for k");
    verify->add_option("--map-pairs", config_.map_pair_count, "Pairs per sample map");
    verify->add_option("--polygons", config_.polygon_count, "Random convex polygons");
    verify->add_option("--oracle-pairs", config_.oracle_pairs, "Pairs for solver oracles");
    verify->add_option("--oracle-samples", config_.oracle_samples,
                       "Boundary samples per oracle pair");
    verify->add_option("--tolerance", config_.tolerance, "Inequality slack");
    verify->add_option("--monotone-tolerance", config_.monotone_tolerance,
                       "Monotone-difference slack");
    verify->add_option("--limit-tolerance", config_.limit_tolerance, "Endpoint-limit tolerance");

    CLI::App* table = app.add_subcommand("table", "Tabulate a special function");
    table->add_option("--fn", fn_.name, "phiK, mu, mu_inv, K, E or a lemma function id")
        ->required();
    table->add_option("--r", range_, "lo:hi:step or a single value")->required();
    table->add_option("--K", k_, "Distortion parameter K");
    table->add_option("--L", l_, "Lipschitz constant L");
    table->add_option("--eps", eps_, "epsilon");

    CLI::App* ball = app.add_subcommand("ball", "Trace a metric sphere");
    ball->add_option("--domain", domain_, "ball:<n>, half:<n> or poly:...")->required();
    ball->add_option("--metric", metric_, "v, rho, j or k")->required();
    ball->add_option("--center", x_, "Center, comma-separated")->required();
    ball->add_option("--radius", radius_, "Metric radius")->required();
    ball->add_option("--resolution", resolution_, "Number of directions");

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err_ << "vangle: " << e.what() << "\n";
      return 2;
    }

    try {
      if (seed_) common_.seed = static_cast<std::uint64_t>(*seed_);
      if (seed_ && *seed_ < 0) throw UsageError("--seed must be non-negative");
      if (common_.format.empty()) common_.format = verify->parsed() ? "json" : "csv";
      if (compute->parsed()) return do_compute();
      if (verify->parsed()) return do_verify();
      if (table->parsed()) return do_table();
      return do_ball();
    } catch (const ConvergenceError& e) {
      err_ << "vangle: " << e.what() << " (best value " << fmt(e.best_value(), common_.digits)
           << ")\n";
      return 1;
    } catch (const std::exception& e) {
      err_ << "vangle: " << e.what() << "\n";
      return 2;
    }
  }

 private:
  Header base_header(const std::string& sub) const {
    return {{"subcommand", sub},
            {"format", common_.format},
            {"digits", std::to_string(common_.digits)},
            {"seed", std::to_string(resolve_seed(common_))}};
  }

  int emit(const std::string& text) {
    if (common_.out_path.empty()) {
      out_ << text;
      return 0;
    }
    std::ofstream f(common_.out_path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + common_.out_path + "' for writing");
    f << text;
    return 0;
  }

  int do_compute() {
    const Domain g = parse_domain(domain_);
    const Point x = parse_point(x_);
    const Point y = parse_point(y_);
    const MetricResult r = compute_metric(metric_, g, x, y);
    const int d = common_.digits;
    Header h = base_header("compute");
    h.insert(h.end(), {{"domain", describe(g)},
                       {"metric", metric_},
                       {"x", to_string(x, 17)},
                       {"y", to_string(y, 17)}});
    if (common_.format == "json") {
      json j = {{"config", header_json(h)}, {"metric", metric_}, {"value", r.value}};
      if (r.witness) {
        j["witness"] = std::vector<double>(r.witness->coords().begin(), r.witness->coords().end());
      }
      if (r.enclosure) j["enclosure"] = {{"lower", r.enclosure->lower}, {"upper", r.enclosure->upper}};
      return emit(j.dump(2) + "\n");
    }
    std::string text = header_text(h) + "metric,value,lower,upper,witness\n";
    text += metric_ + "," + fmt(r.value, d) + ",";
    if (r.enclosure) text += fmt(r.enclosure->lower, d) + "," + fmt(r.enclosure->upper, d);
    else text += ",";
    text += ",";
    if (r.witness) text += quoted(to_string(*r.witness, d));
    return emit(text + "\n");
  }

  int do_verify() {
    const auto id = suite_from_string(suite_);
    if (!id) throw UsageError("unknown suite '" + suite_ + "'");
    config_.seed = resolve_seed(common_);
    const VerificationReport report = run_suite(*id, config_);
    if (common_.format == "json") {
      emit(to_json(report).dump(2) + "\n");
    } else {
      Header h = base_header("verify");
      h.emplace_back("suite", suite_);
      const json params = to_json(config_);
      for (const auto& [k, v] : params.items()) h.emplace_back(k, v.dump());
      std::string text = header_text(h) + "check,kind,status,worst_violation\n";
      for (const Check& c : report.checks) {
        text += quoted(c.name) + "," + std::string(to_string(c.kind)) + "," +
                std::string(to_string(c.status)) + "," + fmt(c.worst_violation, common_.digits) +
                "\n";
      }
      emit(text);
    }
    return report.passed() ? 0 : 1;
  }

  int do_table() {
    fn_.big_k = k_;
    fn_.lipschitz = l_;
    fn_.epsilon = eps_;
    const std::vector<double> xs = parse_range(range_);
    std::vector<double> values;
    for (double x : xs) values.push_back(fn_(x));
    const int d = common_.digits;
    Header h = base_header("table");
    h.emplace_back("fn", fn_.name);
    if (k_) h.emplace_back("K", fmt(*k_, 17));
    if (l_) h.emplace_back("L", fmt(*l_, 17));
    if (eps_) h.emplace_back("eps", fmt(*eps_, 17));
    h.emplace_back("r", range_);
    if (common_.format == "json") {
      json rows = json::array();
      for (std::size_t i = 0; i < xs.size(); ++i) rows.push_back({{"r", xs[i]}, {"value", values[i]}});
      return emit(json{{"config", header_json(h)}, {"rows", rows}}.dump(2) + "\n");
    }
    std::string text = header_text(h) + "r," + fn_.name + "\n";
    for (std::size_t i = 0; i < xs.size(); ++i) text += fmt(xs[i], d) + "," + fmt(values[i], d) + "\n";
    return emit(text);
  }

  int do_ball() {
    const auto metric = metric_from_string(metric_);
    if (!metric) throw UsageError("unknown metric '" + metric_ + "' (v, rho, j, k)");
    const Domain g = parse_domain(domain_);
    const Point c = parse_point(x_);
    const BallSample s = metric_ball_boundary(g, c, radius_, *metric, resolution_);
    Header h = base_header("ball");
    h.emplace_back("resolution", std::to_string(resolution_));
    if (common_.format == "json") {
      json j = to_json(s);
      j["config"] = header_json(h);
      return emit(j.dump(2) + "\n");
    }
    return emit(header_text(h) + to_csv(s, common_.digits));
  }

  std::ostream& out_;
  std::ostream& err_;
  Common common_;
  std::optional<long long> seed_;
  std::string domain_, metric_, x_, y_, suite_, range_;
  double radius_ = 0.0;
  int resolution_ = 64;
  std::optional<double> k_, l_, eps_;
  TableFn fn_;
  VerifyConfig config_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace vangle
