// zerorate: equilibrium analysis and simulation for sponsored-data markets.
//
// Subcommands: validate | equilibrium | delay-sweep | best-response |
// pne-rgf | multi-isp | simulate. Scenarios come from a JSON config file
// (schema in docs/config-schema.md); unknown keys are rejected. Exit codes:
// 0 success, 2 config error, 3 assumption violation, 4 numeric failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zerorate/cp_game.hpp"
#include "zerorate/delay.hpp"
#include "zerorate/errors.hpp"
#include "zerorate/market.hpp"
#include "zerorate/multi_isp.hpp"
#include "zerorate/queue_sim.hpp"
#include "zerorate/wardrop.hpp"

namespace {

using json = nlohmann::json;
using namespace zerorate;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAssumption = 3;
constexpr int kExitNumeric = 4;

struct Sweep {
  std::string axis;  // lambda | lambda0 | c | c1 | c2 | gamma1 | gamma2 | rho_over_beta
  double from = 0.0;
  double to = 0.0;
  int points = 0;
  bool log = false;
};

struct Scenario {
  std::optional<MarketParams> market;
  std::optional<DuopolyParams> duopoly;
  SponsorshipProfile profile;
  std::optional<Sweep> sweep;
  SimConfig sim;
  int grid = 101;
};

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

double get_number(const json& obj, const std::string& where,
                  const std::string& key, std::optional<double> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError("missing key '" + key + "' in " + where);
  }
  if (!obj.at(key).is_number()) {
    throw ConfigError("key '" + key + "' in " + where + " must be a number");
  }
  return obj.at(key).get<double>();
}

std::vector<double> get_number_array(const json& obj, const std::string& where,
                                     const std::string& key) {
  if (!obj.contains(key) || !obj.at(key).is_array()) {
    throw ConfigError("key '" + key + "' in " + where +
                      " must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : obj.at(key)) {
    if (!v.is_number()) {
      throw ConfigError("key '" + key + "' in " + where +
                        " must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

ExogenousMode parse_mode(const std::string& text) {
  if (text == "noncongesting") return ExogenousMode::NonCongesting;
  if (text == "congesting") return ExogenousMode::Congesting;
  throw ConfigError("exogenous mode must be 'noncongesting' or 'congesting'");
}

MarketParams parse_market(const json& obj) {
  require_keys(obj, "market",
               {"capacities", "total_rate", "access_price", "repayment",
                "ad_rate", "exogenous_rate", "exogenous_mode"});
  MarketParams p;
  p.capacities = get_number_array(obj, "market", "capacities");
  p.total_rate = get_number(obj, "market", "total_rate");
  p.access_price = get_number(obj, "market", "access_price");
  p.repayment = get_number(obj, "market", "repayment", 1.0);
  p.ad_rate = get_number(obj, "market", "ad_rate", 1.0);
  p.exogenous_rate = get_number(obj, "market", "exogenous_rate", 0.0);
  if (obj.contains("exogenous_mode")) {
    if (!obj.at("exogenous_mode").is_string()) {
      throw ConfigError("market.exogenous_mode must be a string");
    }
    p.exogenous_mode = parse_mode(obj.at("exogenous_mode").get<std::string>());
  }
  return p;
}

DuopolyParams parse_duopoly(const json& obj) {
  require_keys(obj, "duopoly",
               {"capacities", "total_rate", "price_isp1", "price_isp2",
                "repayment", "ad_rate", "exogenous_rate"});
  DuopolyParams p;
  p.capacities = get_number_array(obj, "duopoly", "capacities");
  p.total_rate = get_number(obj, "duopoly", "total_rate");
  p.price_isp1 = get_number(obj, "duopoly", "price_isp1");
  p.price_isp2 = get_number(obj, "duopoly", "price_isp2");
  p.repayment = get_number(obj, "duopoly", "repayment", 1.0);
  p.ad_rate = get_number(obj, "duopoly", "ad_rate", 1.0);
  p.exogenous_rate = get_number(obj, "duopoly", "exogenous_rate", 0.0);
  return p;
}

Sweep parse_sweep(const json& obj) {
  require_keys(obj, "sweep", {"axis", "from", "to", "points", "log"});
  Sweep s;
  if (!obj.contains("axis") || !obj.at("axis").is_string()) {
    throw ConfigError("sweep.axis must be a string");
  }
  s.axis = obj.at("axis").get<std::string>();
  static const std::set<std::string> axes{"lambda",  "lambda0", "c",
                                          "c1",      "c2",      "gamma1",
                                          "gamma2",  "rho_over_beta"};
  if (!axes.count(s.axis)) {
    throw ConfigError("sweep.axis '" + s.axis + "' is not a known axis");
  }
  s.from = get_number(obj, "sweep", "from");
  s.to = get_number(obj, "sweep", "to");
  s.points = static_cast<int>(get_number(obj, "sweep", "points"));
  if (obj.contains("log")) {
    if (!obj.at("log").is_boolean()) {
      throw ConfigError("sweep.log must be a boolean");
    }
    s.log = obj.at("log").get<bool>();
  }
  if (!(s.points >= 1)) throw ConfigError("sweep.points must be >= 1");
  if (!(s.from <= s.to) || !std::isfinite(s.from) || !std::isfinite(s.to)) {
    throw ConfigError("sweep range must be finite with from <= to");
  }
  if (s.log && !(s.from > 0.0)) {
    throw ConfigError("log-spaced sweeps need from > 0");
  }
  return s;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  require_keys(root, "config root",
               {"market", "duopoly", "profile", "sweep", "simulation", "grid"});
  Scenario sc;
  if (root.contains("market")) sc.market = parse_market(root.at("market"));
  if (root.contains("duopoly")) sc.duopoly = parse_duopoly(root.at("duopoly"));
  if (root.contains("profile")) {
    require_keys(root.at("profile"), "profile", {"gammas"});
    sc.profile.gammas = get_number_array(root.at("profile"), "profile", "gammas");
  } else if (sc.market) {
    sc.profile = SponsorshipProfile::uniform(sc.market->num_cps(), 1.0);
  }
  if (root.contains("sweep")) sc.sweep = parse_sweep(root.at("sweep"));
  if (root.contains("simulation")) {
    const json& sim = root.at("simulation");
    require_keys(sim, "simulation",
                 {"horizon", "seed", "replications", "warmup_fraction"});
    sc.sim.horizon = static_cast<std::uint64_t>(
        get_number(sim, "simulation", "horizon", 1e6));
    sc.sim.seed = static_cast<std::uint64_t>(
        get_number(sim, "simulation", "seed", 0.0));
    sc.sim.replications = static_cast<std::uint64_t>(
        get_number(sim, "simulation", "replications", 32.0));
    sc.sim.warmup_fraction =
        get_number(sim, "simulation", "warmup_fraction", 0.1);
  }
  if (root.contains("grid")) {
    sc.grid = static_cast<int>(get_number(root, "config root", "grid"));
    if (sc.grid < 2) throw ConfigError("grid must be >= 2");
  }
  return sc;
}

std::vector<double> sweep_values(const Sweep& s) {
  std::vector<double> v;
  if (s.points == 1) return {s.from};
  for (int i = 0; i < s.points; ++i) {
    const double t = static_cast<double>(i) / (s.points - 1);
    if (s.log) {
      v.push_back(s.from * std::pow(s.to / s.from, t));
    } else {
      v.push_back(s.from + t * (s.to - s.from));
    }
  }
  return v;
}

void apply_axis(MarketParams& p, SponsorshipProfile& profile,
                const std::string& axis, double value) {
  if (axis == "lambda") {
    p.total_rate = value;
  } else if (axis == "lambda0") {
    p.exogenous_rate = value;
  } else if (axis == "c") {
    p.access_price = value;
  } else if (axis == "gamma1") {
    profile.gammas.at(0) = value;
  } else if (axis == "gamma2") {
    profile.gammas.at(1) = value;
  } else if (axis == "rho_over_beta") {
    p.repayment = value * p.ad_rate;
  } else {
    throw ConfigError("axis '" + axis + "' does not apply to a one-ISP market");
  }
}

void apply_axis(DuopolyParams& p, const std::string& axis, double value) {
  if (axis == "lambda") {
    p.total_rate = value;
  } else if (axis == "lambda0") {
    p.exogenous_rate = value;
  } else if (axis == "c1") {
    p.price_isp1 = value;
  } else if (axis == "c2") {
    p.price_isp2 = value;
  } else if (axis == "rho_over_beta") {
    p.repayment = value * p.ad_rate;
  } else {
    throw ConfigError("axis '" + axis + "' does not apply to the duopoly");
  }
}

// CSV cells are printed with %.17g so round-tripping doubles is lossless and
// output diffs bitwise.
std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) body_ += ',';
      body_ += cells[i];
    }
    body_ += '\n';
  }

  void write(const std::string& out_path) const {
    if (out_path.empty()) {
      std::fwrite(body_.data(), 1, body_.size(), stdout);
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
    out.write(body_.data(), static_cast<std::streamsize>(body_.size()));
  }

 private:
  std::string body_;
};

/// Minimal polyline chart; one series per column beyond the first.
void write_svg(const std::string& path, const std::string& x_label,
               const std::vector<std::string>& y_labels,
               const std::vector<double>& x,
               const std::vector<std::vector<double>>& ys) {
  const double w = 640, h = 420, ml = 60, mr = 20, mt = 20, mb = 40;
  double xmin = x.front(), xmax = x.back();
  double ymin = 1e300, ymax = -1e300;
  for (const auto& s : ys) {
    for (double v : s) {
      if (std::isfinite(v)) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
  }
  if (!(ymax > ymin)) {
    ymax = ymin + 1.0;
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  auto px = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto py = [&](double v) { return h - mb - (v - ymin) / (ymax - ymin) * (h - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
     << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
     << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 8
     << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
  for (size_t s = 0; s < ys.size(); ++s) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[s % 4]
       << "\" points=\"";
    for (size_t i = 0; i < x.size(); ++i) {
      if (!std::isfinite(ys[s][i])) continue;
      os << px(x[i]) << ',' << py(ys[s][i]) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << w - mr - 5 << "\" y=\"" << mt + 16 * (s + 1)
       << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << colors[s % 4]
       << "\">" << y_labels[s] << "</text>\n";
  }
  os << "</svg>\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open svg file '" + path + "'");
  const std::string body = os.str();
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

MarketParams& require_market(Scenario& sc) {
  if (!sc.market) throw ConfigError("this subcommand needs a 'market' section");
  return *sc.market;
}

int cmd_validate(Scenario& sc) {
  ValidationReport report;
  if (sc.duopoly) {
    report = validate_duopoly(*sc.duopoly);
  } else {
    report = validate_assumptions(require_market(sc));
  }
  if (report.passed) {
    std::printf("ok: all model assumptions hold\n");
    return kExitOk;
  }
  for (const auto& [id, msg] : report.violations) {
    std::printf("violation [%s]: %s\n", id.c_str(), msg.c_str());
  }
  return kExitAssumption;
}

int cmd_equilibrium(Scenario& sc, const std::string& out,
                    const std::string& svg) {
  MarketParams& base = require_market(sc);
  std::vector<double> axis_values{0.0};
  std::string axis = "point";
  if (sc.sweep) {
    axis = sc.sweep->axis;
    axis_values = sweep_values(*sc.sweep);
  }
  const int n = base.num_cps();
  CsvWriter csv;
  std::vector<std::string> header{axis};
  for (int i = 1; i <= n; ++i) header.push_back("lambda" + std::to_string(i));
  header.insert(header.end(), {"alpha", "delay", "u1", "u2"});
  csv.row(header);

  std::vector<double> xs;
  std::vector<std::vector<double>> series(2);
  for (double v : axis_values) {
    MarketParams p = base;
    SponsorshipProfile profile = sc.profile;
    if (sc.sweep) apply_axis(p, profile, axis, v);
    EquilibriumFlows flows = solve_wardrop(p, profile);
    std::vector<std::string> row{num(v)};
    for (double r : flows.rates) row.push_back(num(r));
    row.push_back(num(flows.alpha));
    row.push_back(num(mean_delay(p, profile)));
    row.push_back(num(cp_utility(p, profile, 0)));
    row.push_back(num(cp_utility(p, profile, 1)));
    csv.row(row);
    xs.push_back(v);
    series[0].push_back(flows.rates[0]);
    series[1].push_back(flows.rates[1]);
  }
  csv.write(out);
  if (!svg.empty()) write_svg(svg, axis, {"lambda1", "lambda2"}, xs, series);
  return kExitOk;
}

int cmd_delay_sweep(Scenario& sc, const std::string& out,
                    const std::string& svg) {
  MarketParams& base = require_market(sc);
  std::vector<double> prices;
  if (sc.sweep) {
    if (sc.sweep->axis != "c") {
      throw ConfigError("delay-sweep only sweeps the access price axis 'c'");
    }
    prices = sweep_values(*sc.sweep);
  } else {
    prices = log_spaced_prices();
  }
  const DelayCurve curve = delay_vs_price_curve(base, sc.profile, prices);
  const double baseline = neutral_delay(base);
  const double threshold =
      curve.threshold_price ? *curve.threshold_price
                            : std::numeric_limits<double>::quiet_NaN();
  CsvWriter csv;
  csv.row({"c", "delay", "neutral_delay", "threshold_price"});
  for (size_t i = 0; i < curve.prices.size(); ++i) {
    csv.row({num(curve.prices[i]), num(curve.delays[i]), num(baseline),
             num(threshold)});
  }
  csv.write(out);
  if (curve.threshold_price) {
    std::fprintf(stderr, "threshold price: %s\n", num(threshold).c_str());
  }
  if (!svg.empty()) {
    write_svg(svg, "c", {"delay", "neutral"}, curve.prices,
              {curve.delays, std::vector<double>(curve.prices.size(), baseline)});
  }
  return kExitOk;
}

int cmd_best_response(Scenario& sc, const std::string& out,
                      const std::string& svg) {
  MarketParams& base = require_market(sc);
  const BestResponseCurve br1 = best_response_curve(base, 0, sc.grid);
  const BestResponseCurve br2 = best_response_curve(base, 1, sc.grid);
  const auto pne = find_continuous_pne(base, sc.grid);

  CsvWriter csv;
  csv.row({"opponent_gamma", "br_cp1", "br_cp2"});
  std::vector<double> b1, b2;
  for (size_t i = 0; i < br1.opponent_gammas.size(); ++i) {
    b1.push_back(br1.responses[i].front());
    b2.push_back(br2.responses[i].front());
    csv.row({num(br1.opponent_gammas[i]), num(b1.back()), num(b2.back())});
  }
  csv.write(out);
  if (pne.empty()) {
    std::fprintf(stderr, "no PNE at resolution %d\n", sc.grid);
  } else {
    std::fprintf(stderr, "%zu grid PNE found, first (%s, %s)\n", pne.size(),
                 num(pne.front().first).c_str(),
                 num(pne.front().second).c_str());
  }
  std::fprintf(stderr, "best-response discontinuities: %zu (cp1), %zu (cp2)\n",
               br1.discontinuities.size(), br2.discontinuities.size());
  if (!svg.empty()) {
    write_svg(svg, "opponent gamma", {"br_cp1", "br_cp2"},
              br1.opponent_gammas, {b1, b2});
  }
  return kExitOk;
}

// CSV cells are written unquoted, so profile labels use ';' instead of ','.
std::string csv_safe(std::string label) {
  for (char& ch : label) {
    if (ch == ',') ch = ';';
  }
  return label;
}

std::string pne_label(const std::vector<Profile2>& set) {
  std::string s;
  for (const auto& p : set) {
    if (!s.empty()) s += '|';
    s += csv_safe(to_string(p));
  }
  return s.empty() ? "none" : s;
}

int cmd_pne_rgf(Scenario& sc, const std::string& out, const std::string& svg) {
  MarketParams& base = require_market(sc);
  std::vector<double> axis_values{0.0};
  std::string axis = "point";
  if (sc.sweep) {
    axis = sc.sweep->axis;
    axis_values = sweep_values(*sc.sweep);
  }
  CsvWriter csv;
  csv.row({axis, "threshold_ss", "threshold_nn", "rho_over_beta", "pne",
           "rgf_at_pne"});
  std::vector<double> xs, rgfs;
  for (double v : axis_values) {
    MarketParams p = base;
    SponsorshipProfile unused = sc.profile;
    if (sc.sweep) apply_axis(p, unused, axis, v);
    const PneReport report = classify_pne(p);
    double gain = std::numeric_limits<double>::quiet_NaN();
    if (!report.pne_set.empty()) gain = rgf(p, report.pne_set.front());
    csv.row({num(v), num(report.threshold_ss), num(report.threshold_nn),
             num(report.rho_over_beta), pne_label(report.pne_set), num(gain)});
    xs.push_back(v);
    rgfs.push_back(gain);
  }
  csv.write(out);
  if (!svg.empty()) write_svg(svg, axis, {"rgf"}, xs, {rgfs});
  return kExitOk;
}

std::string pne_label_multi(const std::vector<ProfileMulti>& set) {
  std::string s;
  for (const auto& p : set) {
    if (!s.empty()) s += '|';
    s += csv_safe(to_string(p));
  }
  return s.empty() ? "none" : s;
}

int cmd_multi_isp(Scenario& sc, const std::string& out,
                  const std::string& svg) {
  if (!sc.duopoly) throw ConfigError("multi-isp needs a 'duopoly' section");
  std::vector<double> axis_values{0.0};
  std::string axis = "point";
  if (sc.sweep) {
    axis = sc.sweep->axis;
    axis_values = sweep_values(*sc.sweep);
  }
  CsvWriter csv;
  csv.row({axis, "threshold_snsn", "threshold_nnnn", "rho_over_beta", "pne",
           "rgf1", "rgf2"});
  std::vector<double> xs, r1, r2;
  for (double v : axis_values) {
    DuopolyParams p = *sc.duopoly;
    if (sc.sweep) apply_axis(p, axis, v);
    const PneReportMulti report = classify_pne_multi(p);
    double g1 = std::numeric_limits<double>::quiet_NaN(), g2 = g1;
    if (!report.pne_set.empty()) {
      const DuopolyFlows flows = route_flows(p, report.pne_set.front());
      g1 = flows.rgf.first;
      g2 = flows.rgf.second;
    }
    csv.row({num(v), num(report.threshold_snsn), num(report.threshold_nnnn),
             num(report.rho_over_beta), pne_label_multi(report.pne_set),
             num(g1), num(g2)});
    xs.push_back(v);
    r1.push_back(g1);
    r2.push_back(g2);
  }
  csv.write(out);
  if (!svg.empty()) write_svg(svg, axis, {"rgf1", "rgf2"}, xs, {r1, r2});
  return kExitOk;
}

int cmd_simulate(Scenario& sc, const std::string& out) {
  MarketParams& base = require_market(sc);
  const EquilibriumFlows flows = solve_wardrop(base, sc.profile);
  const SimStats stats = simulate(base, flows, sc.sim);
  const TheoryComparison cmp = compare_to_theory(stats, flows);

  CsvWriter csv;
  csv.row({"cp", "arrivals", "arrival_fraction", "mean_sojourn",
           "sojourn_stderr", "theory_sojourn", "z"});
  for (size_t i = 0; i < stats.mean_sojourn.size(); ++i) {
    const double theory =
        1.0 / (stats.service_rate[i] - stats.enqueued_rate[i]);
    csv.row({std::to_string(i + 1), std::to_string(stats.arrivals[i]),
             num(stats.arrival_fraction[i]), num(stats.mean_sojourn[i]),
             num(stats.sojourn_stderr[i]), num(theory), num(cmp.z_scores[i])});
  }
  csv.row({"overall", "", "", num(stats.overall_mean_delay),
           num(stats.overall_stderr), "", num(cmp.overall_delay_z)});
  csv.write(out);
  std::fprintf(stderr, "comparison %s (|z| threshold %g)\n",
               cmp.passed ? "passed" : "failed", cmp.z_threshold);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equilibrium analysis for sponsored-data markets"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path, out_path, svg_path, mode_flag;
  std::optional<std::uint64_t> seed_flag;
  std::optional<int> grid_flag;
  app.add_option("--config", config_path, "scenario config (JSON)")
      ->required();
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  app.add_option("--svg", svg_path, "also write an SVG line chart here");
  app.add_option("--seed", seed_flag, "override simulation.seed");
  app.add_option("--mode", mode_flag,
                 "override exogenous mode: noncongesting|congesting");
  app.add_option("--grid", grid_flag, "override grid resolution");

  const std::vector<std::string> names{"validate",      "equilibrium",
                                       "delay-sweep",   "best-response",
                                       "pne-rgf",       "multi-isp",
                                       "simulate"};
  for (const auto& n : names) app.add_subcommand(n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitConfig : kExitOk;
  }

  try {
    Scenario sc = parse_scenario(config_path);
    if (seed_flag) sc.sim.seed = *seed_flag;
    if (grid_flag) sc.grid = *grid_flag;
    if (!mode_flag.empty() && sc.market) {
      sc.market->exogenous_mode = parse_mode(mode_flag);
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "validate") return cmd_validate(sc);
    if (cmd == "equilibrium") return cmd_equilibrium(sc, out_path, svg_path);
    if (cmd == "delay-sweep") return cmd_delay_sweep(sc, out_path, svg_path);
    if (cmd == "best-response") return cmd_best_response(sc, out_path, svg_path);
    if (cmd == "pne-rgf") return cmd_pne_rgf(sc, out_path, svg_path);
    if (cmd == "multi-isp") return cmd_multi_isp(sc, out_path, svg_path);
    if (cmd == "simulate") return cmd_simulate(sc, out_path);
    std::fprintf(stderr, "error: unknown subcommand '%s'\n", cmd.c_str());
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const PreconditionViolation& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const AssumptionViolation& e) {
    std::fprintf(stderr, "assumption violation: %s\n", e.what());
    return kExitAssumption;
  } catch (const UnstableQueue& e) {
    std::fprintf(stderr, "assumption violation: %s\n", e.what());
    return kExitAssumption;
  } catch (const NoConvergence& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitNumeric;
  }
}
