// afc: exact additive-combinatorics toolkit over prime fields.
// Subcommands: sumset, energy, cover, verify, sweep, fit.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "afc/afc.hpp"

using namespace afc;
using nlohmann::ordered_json;

namespace {

// "1,3,5..8" -> {1,3,5,6,7}; ranges are half-open like set literals.
std::vector<u64> parse_u64_list(const std::string& s) {
  std::vector<u64> out;
  for (const auto& part : detail::split(s, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(detail::parse_u64(part, "list"));
    } else {
      u64 lo = detail::parse_u64(part.substr(0, dots), "list");
      u64 hi = detail::parse_u64(part.substr(dots + 2), "list");
      require(lo <= hi, "parse", "descending range in list: " + part);
      for (u64 v = lo; v < hi; ++v) out.push_back(v);
    }
  }
  return out;
}

ordered_json json_u128(u128 v) {
  if (fits_u64(v)) return ordered_json(static_cast<u64>(v));
  return ordered_json(to_string_u128(v));
}

void print_line(const ordered_json& j) { std::cout << j.dump() << "\n"; }

// --- sumset ---------------------------------------------------------------

struct SumsetArgs {
  u64 p = 0;
  std::string x, y, op = "sum";
  std::string dilate_by, translate_by;
};

int run_sumset(const SumsetArgs& a) {
  Prime prime(a.p);
  FpSet x = generate_set(prime, a.x);
  FpSet result = x;
  require(a.dilate_by.empty() || a.translate_by.empty(), "usage",
          "--dilate and --translate are mutually exclusive");
  if (!a.dilate_by.empty()) {
    result = dilate(detail::parse_u64(a.dilate_by, "--dilate"), x);
  } else if (!a.translate_by.empty()) {
    result = translate(detail::parse_u64(a.translate_by, "--translate"), x);
  } else {
    require(!a.y.empty(), "usage", "need --y (or --dilate/--translate)");
    FpSet y = generate_set(prime, a.y);
    if (a.op == "sum")
      result = sumset(x, y);
    else if (a.op == "diff")
      result = diffset(x, y);
    else if (a.op == "prod")
      result = prodset(x, y);
    else if (a.op == "quotient")
      result = quotient_set(x, y);
    else
      fail_contract("usage", "unknown --op '" + a.op + "'");
  }
  print_line(set_to_json(result));
  return 0;
}

// --- energy ----------------------------------------------------------------

struct EnergyArgs {
  u64 p = 0;
  std::string a, b;
  bool shift_sum = false;
  std::string method = "convolution";
};

int run_energy(const EnergyArgs& args) {
  Prime prime(args.p);
  FpSet a = generate_set(prime, args.a);
  FpSet b = generate_set(prime, args.b);
  require(args.method == "naive" || args.method == "convolution", "usage",
          "--method must be naive or convolution");
  EnergyMethod method =
      args.method == "naive" ? EnergyMethod::naive : EnergyMethod::convolution;
  ordered_json j;
  j["p"] = args.p;
  j["EA_add"] = json_u128(additive_energy(a, b, method).value);
  j["E_mul"] = json_u128(multiplicative_energy(a, b, method).value);
  if (args.shift_sum) {
    ShiftEnergySum s = shift_energy_sum(a, b, method);
    j["S"] = json_u128(s.total);
    j["normalized"] = rational_string(s.normalized);
  }
  print_line(j);
  return 0;
}

// --- cover / verify ---------------------------------------------------------

int run_cover(u64 p, const std::string& x1s, const std::string& x2s, const std::string& epss) {
  Prime prime(p);
  FpSet x1 = generate_set(prime, x1s);
  FpSet x2 = generate_set(prime, x2s);
  CoverResult c = greedy_cover(x1, x2, parse_rational(epss));
  print_line(report_to_json(cover_report(x1, x2, c)));
  return 0;
}

PairGraph graph_from_file(const std::string& path, const FpSet& a, const FpSet& b) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  nlohmann::json j;
  in >> j;
  PairGraph g(a, b);
  for (const auto& entry : j.at("edges")) {
    u64 left = entry.at(0).get<u64>();
    for (u64 right : entry.at(1).get<std::vector<u64>>()) g.add_edge(left, right);
  }
  return g;
}

struct VerifyArgs {
  u64 p = 0;
  std::string x, y, z, g, x1, x2, a, b, eps, xi, k, aprime, bprime, gfile;
  std::vector<std::string> xs;
  u64 q = 1;
};

int run_verify(const std::string& kind, const VerifyArgs& v) {
  Prime prime(v.p);
  auto need = [&](const std::string& s, const char* flag) -> FpSet {
    require(!s.empty(), "usage", std::string("verify ") + kind + " needs " + flag);
    return generate_set(prime, s);
  };
  if (kind == "ruzsa3") {
    print_line(report_to_json(
        verify_ruzsa_triangle(need(v.x, "--x"), need(v.y, "--y"), need(v.z, "--z"))));
  } else if (kind == "ruzsaK") {
    require(!v.xs.empty(), "usage", "verify ruzsaK needs at least one --x");
    std::vector<FpSet> xs;
    for (const auto& s : v.xs) xs.push_back(generate_set(prime, s));
    print_line(report_to_json(verify_ruzsa_sums(need(v.y, "--y"), xs)));
  } else if (kind == "dilate") {
    auto [xi, rep] = best_dilate(need(v.x, "--x"), need(v.y, "--y"), need(v.g, "--g"));
    (void)xi;
    print_line(report_to_json(rep));
  } else if (kind == "cover") {
    return run_cover(v.p, v.x1, v.x2, v.eps);
  } else if (kind == "quotient") {
    FpSet x = need(v.x, "--x"), y = need(v.y, "--y");
    u64 xi = detail::parse_u64(v.xi, "--xi");
    bool inq = in_quotient_set(xi, x, y);
    LemmaReport rep;
    rep.name = "quotient_membership";
    rep.lhs = Rational(sumset(x, dilate(xi, y)).card());
    rep.rhs = Rational(BigInt(x.card()) * y.card());
    rep.holds = inq;
    rep.witness["xi"] = xi;
    print_line(report_to_json(rep));
  } else if (kind == "bsg") {
    FpSet a = need(v.a, "--a"), b = need(v.b, "--b");
    PairGraph g = v.gfile.empty() ? PairGraph::full(a, b) : graph_from_file(v.gfile, a, b);
    BsgWitness w{need(v.aprime, "--aprime"), need(v.bprime, "--bprime"), v.q};
    print_line(report_to_json(verify_bsg_witness(a, b, g, parse_rational(v.k), w)));
  } else if (kind == "garaev") {
    print_line(garaev_to_json(garaev_ratio(need(v.a, "--a"), need(v.b, "--b"))));
  } else {
    fail_contract("usage", "unknown verify kind '" + kind + "'");
  }
  return 0;
}

// --- sweep / fit -------------------------------------------------------------

struct SweepArgs {
  std::string primes, alpha = "1/2", beta = "1/2", seeds = "0..1";
  std::vector<std::string> family_a, family_b;
  std::string exponent_c, constant_c = "15";
  std::string theorem = "thm3";
  int workers = 1;
  std::string out, format = "csv", config;
};

void apply_config_file(SweepArgs& a, CLI::App* cmd) {
  std::ifstream in(a.config);
  if (!in) throw std::ios_base::failure("cannot open config " + a.config);
  auto overridden = [&](const char* flag) { return cmd->count(flag) > 0; };
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t");
      size_t e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    auto assign = [&](const char* flag, auto setter) {
      if (!overridden(flag)) setter();
    };
    if (key == "primes") assign("--primes", [&] { a.primes = value; });
    else if (key == "alpha") assign("--alpha", [&] { a.alpha = value; });
    else if (key == "beta") assign("--beta", [&] { a.beta = value; });
    else if (key == "seeds") assign("--seeds", [&] { a.seeds = value; });
    else if (key == "family-a") assign("--family-a", [&] { a.family_a.push_back(value); });
    else if (key == "family-b") assign("--family-b", [&] { a.family_b.push_back(value); });
    else if (key == "exponent-c") assign("--exponent-c", [&] { a.exponent_c = value; });
    else if (key == "constant-c") assign("--constant-c", [&] { a.constant_c = value; });
    else if (key == "theorem") assign("--theorem", [&] { a.theorem = value; });
    else if (key == "workers")
      assign("--workers", [&] { a.workers = static_cast<int>(detail::parse_u64(value, "workers")); });
    else if (key == "out") assign("--out", [&] { a.out = value; });
    else if (key == "format") assign("--format", [&] { a.format = value; });
    else fail_contract("config", "unknown config key '" + key + "'");
  }
}

SweepConfig build_config(const SweepArgs& a) {
  SweepConfig cfg;
  require(!a.primes.empty(), "config", "no primes given (--primes)");
  cfg.primes = parse_u64_list(a.primes);
  cfg.alpha = parse_rational(a.alpha);
  cfg.beta = parse_rational(a.beta);
  cfg.seeds = parse_u64_list(a.seeds);
  if (a.theorem == "thm3")
    cfg.theorem = TheoremKind::thm3;
  else if (a.theorem == "thm4")
    cfg.theorem = TheoremKind::thm4;
  else
    fail_contract("config", "theorem must be thm3 or thm4");
  cfg.exponent_c = a.exponent_c.empty()
                       ? (cfg.theorem == TheoremKind::thm3 ? Rational(1, 308) : Rational(1, 2240))
                       : parse_rational(a.exponent_c);
  cfg.constant_c = parse_rational(a.constant_c);
  cfg.workers = a.workers;

  auto fa = a.family_a.empty() ? std::vector<std::string>{"random"} : a.family_a;
  auto fb = a.family_b.empty() ? std::vector<std::string>{"random"} : a.family_b;
  if (fa.size() == 1 && fb.size() > 1) fa.assign(fb.size(), fa[0]);
  if (fb.size() == 1 && fa.size() > 1) fb.assign(fa.size(), fb[0]);
  require(fa.size() == fb.size(), "config", "--family-a/--family-b counts differ");
  cfg.families.clear();
  for (size_t i = 0; i < fa.size(); ++i) cfg.families.emplace_back(fa[i], fb[i]);
  return cfg;
}

int run_sweep_cmd(const SweepArgs& a) {
  SweepConfig cfg = build_config(a);
  SweepResult result = run_sweep(cfg);

  ordered_json meta;
  meta["primes"] = cfg.primes;
  meta["alpha"] = rational_string(cfg.alpha);
  meta["beta"] = rational_string(cfg.beta);
  meta["exponent_c"] = rational_string(cfg.exponent_c);
  meta["constant_c"] = rational_string(cfg.constant_c);
  meta["constant_c_note"] =
      "bound constant defaults to 15 for comparability; the thm4 constant is unspecified";
  meta["theorem"] = a.theorem;
  meta["seeds"] = cfg.seeds.size();
  meta["cells"] = result.records.size() + result.failures.size();
  meta["failures"] = result.failures.size();
  std::cerr << meta.dump() << "\n";
  for (const auto& f : result.failures)
    std::cerr << "cell-failure p=" << f.p << " family=" << f.family << " seed=" << f.seed << ": "
              << f.message << "\n";

  if (a.out.empty()) {
    emit_records(result.records, a.format, std::cout);
  } else {
    std::ofstream os(a.out, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open " + a.out);
    emit_records(result.records, a.format, os);
    if (!os) throw std::ios_base::failure("write failed: " + a.out);
  }
  return 0;
}

int run_fit(const std::string& in_path) {
  std::vector<ExperimentRecord> records;
  if (in_path == "-") {
    records = parse_records_jsonl(std::cin);
  } else {
    std::ifstream in(in_path);
    if (!in) throw std::ios_base::failure("cannot open " + in_path);
    records = parse_records_jsonl(in);
  }
  FitResult f = fit_exponent(records);
  ordered_json j;
  j["slope"] = round_sig12(f.slope);
  j["intercept"] = round_sig12(f.intercept);
  j["residual"] = round_sig12(f.residual);
  j["n_points"] = f.n_points;
  print_line(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact additive combinatorics over prime fields"};
  app.require_subcommand(1);

  SumsetArgs sum_args;
  auto* sum_cmd = app.add_subcommand("sumset", "set algebra: A+B, A-B, AB, Q[A,B], b*A, h+A");
  sum_cmd->add_option("--p", sum_args.p, "prime modulus")->required();
  sum_cmd->add_option("--x", sum_args.x, "set literal for X")->required();
  sum_cmd->add_option("--y", sum_args.y, "set literal for Y");
  sum_cmd->add_option("--op", sum_args.op, "sum|diff|prod|quotient (default sum)");
  sum_cmd->add_option("--dilate", sum_args.dilate_by, "emit b*X instead");
  sum_cmd->add_option("--translate", sum_args.translate_by, "emit h+X instead");

  EnergyArgs energy_args;
  auto* energy_cmd = app.add_subcommand("energy", "additive/multiplicative energy of (A,B)");
  energy_cmd->add_option("--p", energy_args.p, "prime modulus")->required();
  energy_cmd->add_option("--a", energy_args.a, "set literal for A")->required();
  energy_cmd->add_option("--b", energy_args.b, "set literal for B")->required();
  energy_cmd->add_flag("--shift-sum", energy_args.shift_sum,
                       "also sum E_+(A,bA) over b in B (needs B in Z_p^*)");
  energy_cmd->add_option("--method", energy_args.method, "convolution (default) or naive");

  VerifyArgs cover_args;
  auto* cover_cmd = app.add_subcommand("cover", "greedy translate cover of X1 by X2");
  cover_cmd->add_option("--p", cover_args.p, "prime modulus")->required();
  cover_cmd->add_option("--x1", cover_args.x1, "set literal for X1")->required();
  cover_cmd->add_option("--x2", cover_args.x2, "set literal for X2")->required();
  cover_cmd->add_option("--eps", cover_args.eps, "uncovered fraction, in (0,1)")->required();

  VerifyArgs verify_args;
  std::string verify_kind;
  auto* verify_cmd = app.add_subcommand("verify", "inequality verifiers; one JSON report per line");
  verify_cmd->add_option("kind", verify_kind, "ruzsa3|ruzsaK|dilate|cover|quotient|bsg|garaev")
      ->required();
  verify_cmd->add_option("--p", verify_args.p, "prime modulus")->required();
  verify_cmd->add_option("--x", verify_args.xs, "set literal (repeatable for ruzsaK)");
  verify_cmd->add_option("--y", verify_args.y, "set literal");
  verify_cmd->add_option("--z", verify_args.z, "set literal");
  verify_cmd->add_option("--g", verify_args.g, "set literal for dilate candidates");
  verify_cmd->add_option("--x1", verify_args.x1, "set literal");
  verify_cmd->add_option("--x2", verify_args.x2, "set literal");
  verify_cmd->add_option("--a", verify_args.a, "set literal");
  verify_cmd->add_option("--b", verify_args.b, "set literal");
  verify_cmd->add_option("--eps", verify_args.eps, "rational in (0,1)");
  verify_cmd->add_option("--xi", verify_args.xi, "field element");
  verify_cmd->add_option("--k", verify_args.k, "rational K");
  verify_cmd->add_option("--aprime", verify_args.aprime, "witness subset of A");
  verify_cmd->add_option("--bprime", verify_args.bprime, "witness subset of B");
  verify_cmd->add_option("--q", verify_args.q, "witness integer Q");
  verify_cmd->add_option("--g-file", verify_args.gfile, "pair graph JSON (default: full A x B)");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "measure S = sum_b E_+(A,bA) over a parameter grid");
  sweep_cmd->add_option("--primes", sweep_args.primes, "comma/range list of primes");
  sweep_cmd->add_option("--alpha", sweep_args.alpha, "|A| = round(p^alpha), default 1/2");
  sweep_cmd->add_option("--beta", sweep_args.beta, "|B| = round(p^beta), default 1/2");
  sweep_cmd->add_option("--family-a", sweep_args.family_a, "family for A (repeatable)");
  sweep_cmd->add_option("--family-b", sweep_args.family_b, "family for B (repeatable)");
  sweep_cmd->add_option("--seeds", sweep_args.seeds, "comma/range list, default 0..1");
  sweep_cmd->add_option("--exponent-c", sweep_args.exponent_c,
                        "bound exponent (default 1/308; 1/2240 for thm4)");
  sweep_cmd->add_option("--constant-c", sweep_args.constant_c, "bound constant, default 15");
  sweep_cmd->add_option("--theorem", sweep_args.theorem, "thm3 (default) or thm4");
  sweep_cmd->add_option("--workers", sweep_args.workers, "cell parallelism, default 1");
  sweep_cmd->add_option("--out", sweep_args.out, "output path (default stdout)");
  sweep_cmd->add_option("--format", sweep_args.format, "csv (default) or jsonl");
  sweep_cmd->add_option("--config", sweep_args.config, "key=value config file");

  std::string fit_in = "-";
  auto* fit_cmd = app.add_subcommand("fit", "least-squares exponent of normalized S against p");
  fit_cmd->add_option("--in", fit_in, "records.jsonl path, or - for stdin");

  try {
    app.parse(argc, argv);
    if (*sum_cmd) return run_sumset(sum_args);
    if (*energy_cmd) return run_energy(energy_args);
    if (*cover_cmd) return run_cover(cover_args.p, cover_args.x1, cover_args.x2, cover_args.eps);
    if (*verify_cmd) {
      // convenience: single --x fills the scalar slot too
      if (!verify_args.xs.empty()) verify_args.x = verify_args.xs.front();
      return run_verify(verify_kind, verify_args);
    }
    if (*sweep_cmd) {
      if (!sweep_args.config.empty()) apply_config_file(sweep_args, sweep_cmd);
      return run_sweep_cmd(sweep_args);
    }
    if (*fit_cmd) return run_fit(fit_in);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: usage: " << e.what() << "\n";
    return 1;
  } catch (const contract_error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
}
