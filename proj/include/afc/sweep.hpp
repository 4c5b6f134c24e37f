#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "afc/energy.hpp"
#include "afc/errors.hpp"
#include "afc/rational.hpp"
#include "afc/rng.hpp"
#include "afc/setspec.hpp"

namespace afc {

enum class TheoremKind { thm3, thm4 };

// One sweep: primes x (familyA, familyB) pairs x seeds. Set sizes come from
// |A| = max(1, round(p^alpha)) unless the family literal pins a size itself.
struct SweepConfig {
  std::vector<u64> primes;
  Rational alpha = Rational(1, 2);
  Rational beta = Rational(1, 2);
  std::vector<std::pair<std::string, std::string>> families = {{"random", "random"}};
  std::vector<u64> seeds = {0};
  Rational exponent_c = Rational(1, 308);
  Rational constant_c = Rational(15);
  TheoremKind theorem = TheoremKind::thm3;
  int workers = 1;
};

struct ExperimentRecord {
  u64 p = 0;
  double alpha_realized = 0.0;
  double beta_realized = 0.0;
  double gamma = 0.0;
  std::string family;
  u64 seed = 0;
  u64 size_a = 0;
  u64 size_b = 0;
  u128 shift_sum = 0;      // S = sum_b E_+(A, bA)
  Rational normalized;     // S / (|A|^3 |B|)
  double bound = 0.0;      // C * p^{-gamma * c}
  double ratio = 0.0;      // normalized / bound

  bool operator==(const ExperimentRecord& o) const {
    return p == o.p && alpha_realized == o.alpha_realized && beta_realized == o.beta_realized &&
           gamma == o.gamma && family == o.family && seed == o.seed && size_a == o.size_a &&
           size_b == o.size_b && shift_sum == o.shift_sum && normalized == o.normalized &&
           bound == o.bound && ratio == o.ratio;
  }
};

struct CellFailure {
  u64 p = 0;
  std::string family;
  u64 seed = 0;
  std::string message;
};

struct SweepResult {
  std::vector<ExperimentRecord> records;
  std::vector<CellFailure> failures;
};

namespace detail {

inline u64 realized_size(u64 p, const Rational& expo) {
  double target = std::pow(static_cast<double>(p), to_double(expo));
  u64 s = static_cast<u64>(std::llround(target));
  if (s < 1) s = 1;
  if (s > p) s = p;
  return s;
}

// Family literals without an explicit size pick it up from the exponent:
// "random", "interval", "ap:start,step", "gp:g", "gp", "subgroup".
inline std::string resolve_family(const std::string& fam, const Prime& prime, u64 size) {
  if (fam == "random") return "random:" + std::to_string(size);
  if (fam == "interval") return "0.." + std::to_string(size);
  if (fam == "gp") return "gp:" + std::to_string(prime.generator()) + "," + std::to_string(size);
  if (fam.rfind("gp:", 0) == 0 && fam.find(',') == std::string::npos)
    return fam + "," + std::to_string(size);
  if (fam.rfind("ap:", 0) == 0 &&
      std::count(fam.begin(), fam.end(), ',') == 1)
    return fam + "," + std::to_string(size);
  if (fam == "subgroup") {
    // nearest divisor of p-1 to the target size; ties to the smaller one
    u64 n = prime.value() - 1;
    u64 best = 1;
    for (u64 d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      for (u64 cand : {d, n / d}) {
        u64 da = cand > size ? cand - size : size - cand;
        u64 db = best > size ? best - size : size - best;
        if (da < db || (da == db && cand < best)) best = cand;
      }
    }
    return "subgroup:" + std::to_string(best);
  }
  return fam;  // already a complete literal
}

inline constexpr u64 kSweepSalt = 0x5eedfeed5eedfeedULL;

}  // namespace detail

inline void validate_config(const SweepConfig& cfg) {
  require(!cfg.primes.empty(), "config", "no primes given");
  require(!cfg.families.empty(), "config", "no families given");
  require(!cfg.seeds.empty(), "config", "no seeds given");
  require(cfg.alpha > 0 && cfg.alpha <= 1, "config", "alpha must lie in (0, 1]");
  require(cfg.beta > 0 && cfg.beta <= 1, "config", "beta must lie in (0, 1]");
  require(cfg.workers >= 1, "config", "workers must be >= 1");
  if (cfg.theorem == TheoremKind::thm3) {
    for (u64 p : cfg.primes) {
      u64 sa = detail::realized_size(p, cfg.alpha);
      u64 sb = detail::realized_size(p, cfg.beta);
      require(4 * sb >= sa, "config",
              "theorem thm3 needs |B|/|A| >= 1/4 (p=" + std::to_string(p) + ")");
    }
  }
}

// Executes every cell; failures are reported in-band, not thrown. Cells are
// independent and the per-cell RNG is a hash of (salt, p, family index, seed),
// so output is byte-identical for any worker count.
inline SweepResult run_sweep(const SweepConfig& cfg) {
  validate_config(cfg);

  struct Cell {
    u64 p;
    size_t family_idx;
    u64 seed;
  };
  std::vector<Cell> cells;
  for (u64 p : cfg.primes)
    for (size_t f = 0; f < cfg.families.size(); ++f)
      for (u64 s : cfg.seeds) cells.push_back({p, f, s});

  std::vector<std::variant<std::monostate, ExperimentRecord, CellFailure>> slots(cells.size());

  auto run_cell = [&](size_t idx) {
    const Cell& cell = cells[idx];
    const auto& fam = cfg.families[cell.family_idx];
    std::string family_label = fam.first + "|" + fam.second;
    try {
      Prime prime(cell.p);
      u64 target_a = detail::realized_size(cell.p, cfg.alpha);
      u64 target_b = detail::realized_size(cell.p, cfg.beta);
      u64 cell_seed = hash_seed({detail::kSweepSalt, cell.p, cell.family_idx, cell.seed});
      FpSet a = generate_set(prime, detail::resolve_family(fam.first, prime, target_a),
                             mix_u64(cell_seed, 0));
      FpSet b_raw = generate_set(prime, detail::resolve_family(fam.second, prime, target_b),
                                 mix_u64(cell_seed, 1));
      FpSet b = remove_element(b_raw, 0);  // theorems require B in Z_p^*
      require(!a.is_empty(), "empty_set", "generated A is empty");
      require(!b.is_empty(), "empty_set", "generated B is empty after removing 0");

      ShiftEnergySum s = shift_energy_sum(a, b);
      ExperimentRecord rec;
      rec.p = cell.p;
      double logp = std::log(static_cast<double>(cell.p));
      rec.alpha_realized = round_sig12(std::log(static_cast<double>(a.card())) / logp);
      rec.beta_realized = round_sig12(std::log(static_cast<double>(b.card())) / logp);
      rec.gamma = round_sig12(std::min(rec.beta_realized, 1.0 - rec.alpha_realized));
      rec.family = family_label;
      rec.seed = cell.seed;
      rec.size_a = a.card();
      rec.size_b = b.card();
      rec.shift_sum = s.total;
      rec.normalized = s.normalized;
      rec.bound = round_sig12(to_double(cfg.constant_c) *
                              std::pow(static_cast<double>(cell.p),
                                       -rec.gamma * to_double(cfg.exponent_c)));
      rec.ratio = round_sig12(to_double(rec.normalized) / rec.bound);
      slots[idx] = std::move(rec);
    } catch (const std::exception& e) {
      slots[idx] = CellFailure{cell.p, family_label, cell.seed, e.what()};
    }
  };

  int workers = std::min<int>(cfg.workers, static_cast<int>(cells.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          run_cell(i);
        }
      });
    for (auto& t : pool) t.join();
  }

  SweepResult out;
  for (auto& slot : slots) {
    if (std::holds_alternative<ExperimentRecord>(slot))
      out.records.push_back(std::get<ExperimentRecord>(std::move(slot)));
    else if (std::holds_alternative<CellFailure>(slot))
      out.failures.push_back(std::get<CellFailure>(std::move(slot)));
  }
  return out;
}

// --- emission -------------------------------------------------------------

inline const char* kCsvHeader =
    "p,alpha_realized,beta_realized,gamma,family,seed,sizeA,sizeB,S,normalized,bound,ratio";

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline void emit_records_csv(const std::vector<ExperimentRecord>& records, std::ostream& os) {
  os << kCsvHeader << "\n";
  for (const auto& r : records) {
    os << r.p << ',' << format_real(r.alpha_realized) << ',' << format_real(r.beta_realized)
       << ',' << format_real(r.gamma) << ',' << detail::csv_field(r.family) << ',' << r.seed
       << ',' << r.size_a << ',' << r.size_b << ',' << to_string_u128(r.shift_sum) << ','
       << rational_string(r.normalized) << ',' << format_real(r.bound) << ','
       << format_real(r.ratio) << "\n";
  }
}

inline nlohmann::ordered_json record_to_json(const ExperimentRecord& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["alpha_realized"] = r.alpha_realized;
  j["beta_realized"] = r.beta_realized;
  j["gamma"] = r.gamma;
  j["family"] = r.family;
  j["seed"] = r.seed;
  j["sizeA"] = r.size_a;
  j["sizeB"] = r.size_b;
  j["S"] = to_string_u128(r.shift_sum);
  j["normalized"] = rational_string(r.normalized);
  j["bound"] = r.bound;
  j["ratio"] = r.ratio;
  return j;
}

inline void emit_records_jsonl(const std::vector<ExperimentRecord>& records, std::ostream& os) {
  for (const auto& r : records) os << record_to_json(r).dump() << "\n";
}

inline void emit_records(const std::vector<ExperimentRecord>& records, const std::string& format,
                         std::ostream& os) {
  if (format == "csv") {
    emit_records_csv(records, os);
  } else if (format == "jsonl") {
    emit_records_jsonl(records, os);
  } else {
    fail_contract("format", "unknown format '" + format + "' (csv or jsonl)");
  }
}

inline ExperimentRecord record_from_json(const nlohmann::json& j) {
  ExperimentRecord r;
  r.p = j.at("p").get<u64>();
  r.alpha_realized = j.at("alpha_realized").get<double>();
  r.beta_realized = j.at("beta_realized").get<double>();
  r.gamma = j.at("gamma").get<double>();
  r.family = j.at("family").get<std::string>();
  r.seed = j.at("seed").get<u64>();
  r.size_a = j.at("sizeA").get<u64>();
  r.size_b = j.at("sizeB").get<u64>();
  r.shift_sum = parse_u128(j.at("S").get<std::string>());
  r.normalized = parse_rational(j.at("normalized").get<std::string>());
  r.bound = j.at("bound").get<double>();
  r.ratio = j.at("ratio").get<double>();
  return r;
}

inline std::vector<ExperimentRecord> parse_records_jsonl(std::istream& is) {
  std::vector<ExperimentRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

// --- exponent fit -----------------------------------------------------------

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of log-space residuals
  int n_points = 0;
};

// OLS of log(normalized) against log(p); within each prime the normalized
// values are aggregated by median before taking logs.
inline FitResult fit_exponent(const std::vector<ExperimentRecord>& records) {
  std::map<u64, std::vector<Rational>> per_prime;
  for (const auto& r : records) per_prime[r.p].push_back(r.normalized);
  require(per_prime.size() >= 2, "fit", "need records at >= 2 distinct primes");

  std::vector<std::pair<double, double>> pts;  // (log p, log median)
  for (auto& [p, vals] : per_prime) {
    std::sort(vals.begin(), vals.end());
    Rational median = vals.size() % 2 == 1
                          ? vals[vals.size() / 2]
                          : (vals[vals.size() / 2 - 1] + vals[vals.size() / 2]) / 2;
    require(median > 0, "fit", "median normalized must be positive");
    pts.emplace_back(std::log(static_cast<double>(p)), std::log(to_double(median)));
  }

  double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  require(denom != 0, "fit", "degenerate fit (all primes equal?)");
  FitResult f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (auto [x, y] : pts) {
    double e = y - (f.slope * x + f.intercept);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  f.n_points = static_cast<int>(pts.size());
  return f;
}

}  // namespace afc
