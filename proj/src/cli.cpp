#include "ofa/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ofa/distribution.hpp"
#include "ofa/equilibrium.hpp"
#include "ofa/errors.hpp"
#include "ofa/oracle.hpp"
#include "ofa/simulate.hpp"
#include "ofa/sweep.hpp"

namespace ofa::cli {
namespace {

using Json = nlohmann::ordered_json;

/// Everything a subcommand needs; populated from flags and the optional
/// config file.
struct RunConfig {
  std::vector<std::string> dists;
  double strike = 0.5;
  std::vector<double> alphas;
  std::string alpha_grid;
  double p = 0.0;
  double q = 0.0;
  double tol = kDefaultTolerance;
  std::uint64_t n_trials = 1'000'000;
  std::uint64_t seed = 42;
  std::optional<double> bid;
  std::string format = "csv";
  bool figure2 = false;
  std::string output;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kDefaultBetaLaws = {"beta:2,2", "beta:2,5", "beta:5,2",
                                               "beta:0.5,0.5"};

AuctionParams params_of(const RunConfig& cfg, double alpha) {
  return {.strike = cfg.strike, .alpha = alpha, .p = cfg.p, .q = cfg.q};
}

double single_alpha(const RunConfig& cfg) {
  if (cfg.alphas.size() != 1) throw ConfigError("exactly one --alpha is required");
  return cfg.alphas.front();
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("--alpha-grid expects start,stop,points");
  const auto real = [&](const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError(fmt::format("bad number '{}' in --alpha-grid", s));
    }
    return v;
  };
  const double points = real(parts[2]);
  if (points != std::floor(points) || points > 1e7) {
    throw ConfigError("--alpha-grid points must be an integer");
  }
  return alpha_grid(real(parts[0]), real(parts[1]), static_cast<int>(points));
}

std::vector<double> grid_of(const RunConfig& cfg) {
  if (!cfg.alphas.empty()) {
    if (!cfg.alpha_grid.empty()) throw ConfigError("give either --alpha or --alpha-grid");
    if (cfg.alphas.size() < 2) throw ConfigError("an explicit alpha list needs >= 2 points");
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
      const double a = cfg.alphas[i];
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha values must lie in [0, 1]");
      if (i > 0 && !(a > cfg.alphas[i - 1])) {
        throw ConfigError("alpha list must be strictly increasing");
      }
    }
    return cfg.alphas;
  }
  return parse_grid(cfg.alpha_grid.empty() ? "0,1,101" : cfg.alpha_grid);
}

std::vector<DistributionSpec> dists_of(const RunConfig& cfg) {
  std::vector<std::string> texts = cfg.dists;
  if (cfg.figure2) {
    if (!texts.empty()) throw ConfigError("--figure2 cannot be combined with --dist");
    texts = kDefaultBetaLaws;
  }
  if (texts.empty()) texts.emplace_back("uniform:0,1");
  std::vector<DistributionSpec> specs;
  for (const auto& t : texts) specs.push_back(DistributionSpec::parse(t));
  return specs;
}

DistributionSpec single_dist(const RunConfig& cfg) {
  auto specs = dists_of(cfg);
  if (specs.size() != 1 || cfg.figure2) throw ConfigError("this command takes one --dist");
  return specs.front();
}

Json json_real(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v == 0.0 ? 0.0 : v;
}

Json json_opt(const std::optional<double>& v) { return v ? json_real(*v) : Json(nullptr); }

std::string csv_opt(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- solve / sweep ----

constexpr std::string_view kSolutionHeader =
    "alpha,b_star,threshold,p_exec,effective_spread,revenue,residual,status";

std::string csv_row(const SweepRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{}", format_real(r.alpha), format_real(r.b_star),
                     format_real(r.threshold), format_real(r.p_exec),
                     csv_opt(r.effective_spread), format_real(r.revenue),
                     format_real(r.residual), to_string(r.status));
}

Json json_row(const SweepRow& r) {
  Json j;
  j["alpha"] = json_real(r.alpha);
  j["b_star"] = json_real(r.b_star);
  j["threshold"] = json_real(r.threshold);
  j["p_exec"] = json_real(r.p_exec);
  j["effective_spread"] = json_opt(r.effective_spread);
  j["revenue"] = json_real(r.revenue);
  j["residual"] = json_real(r.residual);
  j["status"] = std::string(to_string(r.status));
  return j;
}

std::string cmd_solve(const RunConfig& cfg) {
  const double alpha = single_alpha(cfg);
  const auto dist = single_dist(cfg).build();
  const auto s = solve_equilibrium(*dist, params_of(cfg, alpha), cfg.tol);
  const SweepRow row{alpha, s.b_star, s.threshold, s.p_exec, s.effective_spread,
                     s.revenue, s.residual, s.status};
  if (cfg.format == "json") return dump(json_row(row));
  return fmt::format("{}\n{}\n", kSolutionHeader, csv_row(row));
}

std::string cmd_sweep(const RunConfig& cfg) {
  const auto grid = grid_of(cfg);
  const auto specs = dists_of(cfg);
  const bool tagged = specs.size() > 1;

  std::string csv;
  Json rows = Json::array();
  if (cfg.format == "csv") {
    csv = fmt::format("{}{}\n", tagged ? "dist," : "", kSolutionHeader);
  }
  for (const auto& spec : specs) {
    const auto dist = spec.build();
    for (const auto& row : sweep_alpha(*dist, params_of(cfg, 0.0), grid, cfg.tol)) {
      if (cfg.format == "json") {
        Json j = json_row(row);
        if (tagged) {
          Json with_dist;
          with_dist["dist"] = spec.to_string();
          with_dist.update(j);
          j = std::move(with_dist);
        }
        rows.push_back(std::move(j));
      } else {
        // The label contains a comma, so it is quoted.
        csv += fmt::format("{}{}\n", tagged ? "\"" + spec.to_string() + "\"," : "",
                           csv_row(row));
      }
    }
  }
  return cfg.format == "json" ? dump(rows) : csv;
}

// ---- simulate ----

double z_score(double observed, double expected, double se) {
  const double diff = observed - expected;
  if (se > 0.0) return diff / se;
  if (diff == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

std::string cmd_simulate(const RunConfig& cfg) {
  const double alpha = single_alpha(cfg);
  const auto dist = single_dist(cfg).build();
  const AuctionParams params = params_of(cfg, alpha);
  if (cfg.n_trials == 0) throw ConfigError("--n must be at least 1");

  const double bid = cfg.bid ? *cfg.bid : solve_equilibrium(*dist, params, cfg.tol).b_star;
  const SimResult sim = simulate_auction(*dist, params, {cfg.n_trials, cfg.seed, bid});

  const double a_utility = expected_utility(*dist, params, bid);
  const double a_exec = execution_probability(*dist, params, bid);
  const double a_revenue = revenue(params, bid, a_exec);
  const auto a_spread = effective_spread(*dist, params, bid);
  std::optional<double> z_spread;
  if (sim.mean_spread_given_exec && a_spread) {
    z_spread = z_score(*sim.mean_spread_given_exec, *a_spread, sim.se_spread);
  }

  struct Field {
    std::string name;
    Json json;
    std::string csv;
  };
  const auto real = [](std::string name, double v) {
    return Field{std::move(name), json_real(v), format_real(v)};
  };
  const auto maybe = [](std::string name, const std::optional<double>& v) {
    return Field{std::move(name), json_opt(v), csv_opt(v)};
  };
  const auto count = [](std::string name, std::uint64_t v) {
    return Field{std::move(name), v, std::to_string(v)};
  };
  std::optional<double> se_spread;
  if (sim.mean_spread_given_exec) se_spread = sim.se_spread;
  const std::vector<Field> fields = {
      real("alpha", alpha),
      real("bid", bid),
      count("n_trials", sim.n_trials),
      count("seed", cfg.seed),
      real("mean_utility", sim.mean_utility),
      real("se_utility", sim.se_utility),
      real("exec_rate", sim.exec_rate),
      real("se_exec", sim.se_exec),
      real("mean_revenue", sim.mean_revenue),
      real("se_revenue", sim.se_revenue),
      maybe("mean_spread", sim.mean_spread_given_exec),
      maybe("se_spread", se_spread),
      count("n_exec", sim.n_exec),
      real("analytic_utility", a_utility),
      real("analytic_p_exec", a_exec),
      real("analytic_revenue", a_revenue),
      maybe("analytic_spread", a_spread),
      real("z_utility", z_score(sim.mean_utility, a_utility, sim.se_utility)),
      real("z_exec", z_score(sim.exec_rate, a_exec, sim.se_exec)),
      real("z_revenue", z_score(sim.mean_revenue, a_revenue, sim.se_revenue)),
      maybe("z_spread", z_spread),
  };

  if (cfg.format == "json") {
    Json j;
    for (const auto& f : fields) j[f.name] = f.json;
    return dump(j);
  }
  std::string header;
  std::string row;
  for (const auto& f : fields) {
    const char* sep = header.empty() ? "" : ",";
    header += sep + f.name;
    row += sep + f.csv;
  }
  return header + "\n" + row + "\n";
}

// ---- compare-oracle ----

std::string cmd_compare_oracle(const RunConfig& cfg) {
  for (const auto& d : cfg.dists) {
    const auto spec = DistributionSpec::parse(d);
    if (spec.kind != DistributionSpec::Kind::uniform || spec.first != 0.0 || spec.second != 1.0) {
      throw ConfigError("compare-oracle is fixed to uniform:0,1");
    }
  }
  if (cfg.figure2) throw ConfigError("compare-oracle is fixed to uniform:0,1");
  if (cfg.strike != 0.5) throw ConfigError("compare-oracle is fixed to strike 0.5");
  if (cfg.p != 0.0 || cfg.q != 0.0) throw ConfigError("compare-oracle needs p = q = 0");

  double max_corrected = 0.0;
  double max_appendix = 0.0;
  std::vector<oracle::OracleReport> reports;
  for (const double alpha : grid_of(cfg)) {
    reports.push_back(oracle::compare(alpha, cfg.tol));
    max_corrected = std::max(max_corrected, std::abs(reports.back().corrected_minus_numeric));
    max_appendix = std::max(max_appendix, std::abs(reports.back().appendix_minus_numeric));
  }

  if (cfg.format == "json") {
    Json rows = Json::array();
    for (const auto& r : reports) {
      Json j;
      j["alpha"] = json_real(r.alpha);
      j["corrected_bid"] = json_real(r.corrected_bid);
      j["paper_appendix_bid"] = json_real(r.paper_appendix_bid);
      j["numeric_bid"] = json_real(r.numeric_bid);
      j["corrected_minus_numeric"] = json_real(r.corrected_minus_numeric);
      j["appendix_minus_numeric"] = json_real(r.appendix_minus_numeric);
      rows.push_back(std::move(j));
    }
    Json doc;
    doc["rows"] = std::move(rows);
    doc["max_abs_corrected_minus_numeric"] = json_real(max_corrected);
    doc["max_abs_appendix_minus_numeric"] = json_real(max_appendix);
    return dump(doc);
  }
  std::string out =
      "alpha,corrected_bid,paper_appendix_bid,numeric_bid,corrected_minus_numeric,"
      "appendix_minus_numeric\n";
  for (const auto& r : reports) {
    out += fmt::format("{},{},{},{},{},{}\n", format_real(r.alpha), format_real(r.corrected_bid),
                       format_real(r.paper_appendix_bid), format_real(r.numeric_bid),
                       format_real(r.corrected_minus_numeric),
                       format_real(r.appendix_minus_numeric));
  }
  out += fmt::format("# max_abs_corrected_minus_numeric={},max_abs_appendix_minus_numeric={}\n",
                     format_real(max_corrected), format_real(max_appendix));
  return out;
}

}  // namespace

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  return fmt::format("{:.12g}", v);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Equilibrium bids in order flow auctions with upfront and contingent fees",
               "ofa"};
  app.set_config("--config", "", "Read `key = value` settings; flags take precedence");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--dist", cfg.dists, "Price law: uniform:<lo>,<hi> or beta:<a>,<b>")
      ->take_all();
  app.add_option("--strike", cfg.strike, "Limit price K");
  app.add_option("--alpha", cfg.alphas, "Upfront share of the bid")->take_all();
  app.add_option("--alpha-grid", cfg.alpha_grid, "start,stop,points");
  app.add_option("--p", cfg.p, "Forced execution probability");
  app.add_option("--q", cfg.q, "Forced failure probability");
  app.add_option("--tol", cfg.tol, "Residual tolerance of the solver");
  app.add_option("--n", cfg.n_trials, "Monte Carlo trials");
  app.add_option("--seed", cfg.seed, "Monte Carlo seed");
  app.add_option("--bid", cfg.bid, "Simulated bid (default: equilibrium bid)");
  app.add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--figure2", cfg.figure2, "Sweep the four default Beta laws");
  app.add_option("--output", cfg.output, "Write records here instead of stdout");

  auto* solve = app.add_subcommand("solve", "Equilibrium for one alpha");
  auto* sweep = app.add_subcommand("sweep", "Equilibrium across an alpha grid");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of one alpha");
  auto* compare = app.add_subcommand("compare-oracle", "Closed forms vs the numeric solver");

  std::vector<std::string> storage(args.begin(), args.end());
  if (storage.empty()) storage.emplace_back("ofa");
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    std::string text;
    if (*solve) {
      text = cmd_solve(cfg);
    } else if (*sweep) {
      text = cmd_sweep(cfg);
    } else if (*simulate) {
      text = cmd_simulate(cfg);
    } else if (*compare) {
      text = cmd_compare_oracle(cfg);
    }
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError(fmt::format("cannot open '{}' for writing", cfg.output));
      file << text;
      if (!file.flush()) throw ConfigError(fmt::format("failed writing '{}'", cfg.output));
    }
    return kOk;
  } catch (const NumericFailure& e) {
    err << "ofa: numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const ConfigError& e) {
    err << "ofa: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidParams& e) {
    err << "ofa: invalid parameters: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "ofa: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "ofa: internal error: " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace ofa::cli
