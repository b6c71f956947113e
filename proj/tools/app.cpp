#include "app.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "paucity/congruence.hpp"
#include "paucity/counting.hpp"
#include "paucity/curves.hpp"
#include "paucity/errors.hpp"
#include "paucity/intfactor.hpp"
#include "paucity/polyalg.hpp"
#include "paucity/rmf.hpp"

namespace paucity::app {

namespace {

using json = nlohmann::ordered_json;

struct Config {
  std::string command;
  std::string poly_text;
  std::optional<std::uint64_t> n;
  std::string grid_text;
  std::string k_text;
  std::uint64_t lambda = 0;  // 0: floor(N^(1/6))
  std::uint64_t m = 0;       // 0: floor(M(P) N^(1/4))
  std::string c_text = "1";
  std::uint64_t seed = 1;
  std::uint64_t trials = 20000;
  unsigned threads = 1;
  std::string format = "json";
  std::string out;
  std::uint64_t l_max = 5000;
  std::uint64_t z_max = 2000;
  std::string mixed_text;
  bool brute = false;
};

struct Report {
  json config_echo = json::object();
  json rows = json::array();
  json summary = json::object();
  std::uint64_t passed = 0;
  json failed = json::array();
  std::string error;

  void check(bool ok, const std::string& what) {
    if (ok)
      ++passed;
    else
      failed.push_back(what);
  }
};

// Exact integers are JSON numbers while they fit 64 bits, decimal strings beyond.
json big(const BigInt& v) {
  if (fits_u64(v)) return to_u64(v);
  if (mpz_fits_slong_p(v.get_mpz_t())) return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
  return v.get_str();
}

// Nearest double to q. The quotient keeps 64 bits and a sticky low bit, so the final
// u64 -> double conversion rounds once.
double nearest_double(const BigRational& q) {
  if (sgn(q) == 0) return 0.0;
  BigInt num = abs(q.get_num());
  BigInt den = q.get_den();
  const long shift = 64 - (static_cast<long>(bit_length(num)) - static_cast<long>(bit_length(den)));
  if (shift > 0)
    num <<= static_cast<unsigned long>(shift);
  else
    den <<= static_cast<unsigned long>(-shift);
  BigInt quot, rem;
  mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  long exponent = -shift;
  if (bit_length(quot) > 64) {
    if (mpz_odd_p(quot.get_mpz_t())) rem = 1;
    quot >>= 1;
    ++exponent;
  }
  std::uint64_t bits = to_u64(quot);
  if (sgn(rem) != 0) bits |= 1;
  const double mag = std::ldexp(static_cast<double>(bits), static_cast<int>(exponent));
  return sgn(q) < 0 ? -mag : mag;
}

json real(long double v) {
  const double d = static_cast<double>(v);
  if (!std::isfinite(d)) return nullptr;
  return d;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(std::string(what) + ": not a non-negative integer: '" + s + "'");
  return v;
}

std::vector<std::uint64_t> resolve_grid(const Config& c, std::uint64_t fallback) {
  if (c.n && !c.grid_text.empty()) throw DomainError("give either --N or --N-grid, not both");
  if (c.n) return {*c.n};
  if (c.grid_text.empty()) return {fallback};
  std::vector<std::uint64_t> grid;
  for (const auto& s : split_list(c.grid_text)) grid.push_back(parse_u64(s, "--N-grid"));
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1]) throw DomainError("--N-grid must be strictly increasing");
  if (grid.empty()) throw DomainError("--N-grid is empty");
  return grid;
}

std::uint64_t resolve_n(const Config& c, std::uint64_t fallback) {
  const auto grid = resolve_grid(c, fallback);
  if (grid.size() != 1) throw DomainError("this command takes a single --N");
  return grid.front();
}

std::vector<unsigned> resolve_k(const Config& c, std::vector<unsigned> fallback) {
  if (c.k_text.empty()) return fallback;
  std::vector<unsigned> ks;
  for (const auto& s : split_list(c.k_text)) {
    const std::uint64_t k = parse_u64(s, "--k");
    if (k == 0 || k > 64) throw DomainError("--k must lie in [1, 64]");
    ks.push_back(static_cast<unsigned>(k));
  }
  if (ks.empty()) throw DomainError("--k is empty");
  return ks;
}

BigRational resolve_c(const Config& c) {
  BigRational v;
  if (v.set_str(c.c_text, 10) != 0) throw ParseError("--C: not a rational number: '" + c.c_text + "'");
  v.canonicalize();
  if (sgn(v) <= 0) throw DomainError("--C must be positive");
  return v;
}

std::uint64_t lambda_for(const Config& c, std::uint64_t n) { return c.lambda ? c.lambda : default_lambda(n); }

json u64_list(const std::vector<std::uint64_t>& v) { return json(v); }

json k_list(const std::vector<unsigned>& v) { return json(v); }

/// Eligible profile of the polynomial shifted to be positive on [1, N].
struct Prepared {
  IntPoly input;
  PolyProfile profile;
  std::uint64_t shift = 0;
};

Prepared prepare(const Config& c) {
  Prepared p;
  p.input = parse_poly(c.poly_text);
  const PolyProfile raw = make_profile(p.input);
  if (!raw.eligible) throw PreconditionError("ineligible polynomial: " + raw.reason);
  const Normalized n = normalize(p.input);
  p.profile = make_profile(n.poly);
  p.shift = n.shift;
  return p;
}

void echo_poly(Report& r, const Config& c, const Prepared& p) {
  r.config_echo["command"] = c.command;
  r.config_echo["poly"] = to_string(p.input);
  r.config_echo["shift"] = p.shift;
  r.config_echo["poly_used"] = to_string(p.profile.p);
}

json bound_row(const BoundReport& b) {
  json row;
  row["check"] = b.quantity;
  for (const auto& [name, value] : b.inputs) row[name] = value;
  row["exact"] = big(b.exact);
  row["bound"] = b.bound;
  row["bound_exact"] = b.bound_exact ? json(b.bound_exact->get_str()) : json(nullptr);
  row["holds"] = b.holds;
  row["advisory"] = b.advisory;
  row["certified"] = b.certified;
  return row;
}

std::string label(const BoundReport& b) {
  std::string s = b.quantity;
  for (const auto& [name, value] : b.inputs)
    if (name == "l" || name == "z" || name == "N" || name == "k" || name == "lambda") s += " " + name + "=" + value;
  return s;
}

void cmd_analyze(const Config& c, Report& r) {
  const IntPoly p = parse_poly(c.poly_text);
  r.config_echo["command"] = c.command;
  r.config_echo["poly"] = to_string(p);
  const PolyProfile pr = make_profile(p);
  json row;
  row["poly"] = to_string(pr.p);
  row["coeffs"] = to_coeff_string(pr.p);
  row["degree"] = pr.d;
  row["leading"] = big(pr.leading);
  row["eligible"] = pr.eligible;
  row["reason"] = pr.reason;
  row["e_p"] = pr.e_p;
  row["q"] = to_string(pr.q);
  row["disc_q"] = big(pr.disc_q);
  row["n0"] = pr.n0;
  row["m_p"] = pr.m_p ? json(*pr.m_p) : json(nullptr);
  row["shift"] = pr.eligible ? json(normalize(p).shift) : json(nullptr);
  r.rows.push_back(row);
}

void cmd_count(const Config& c, Report& r) {
  const Prepared pp = prepare(c);
  const PolyProfile& pr = pp.profile;
  const auto grid = resolve_grid(c, 100);
  const auto ks = resolve_k(c, {2});
  echo_poly(r, c, pp);
  r.config_echo["N_grid"] = u64_list(grid);
  r.config_echo["k"] = k_list(ks);
  r.config_echo["lambda"] = c.lambda ? json(c.lambda) : json("floor(N^(1/6))");
  r.config_echo["M"] = c.m ? json(c.m) : json("floor(M(P) N^(1/4))");
  r.config_echo["brute"] = c.brute;
  r.config_echo["format"] = c.format;

  const CountOptions opts{c.threads};
  r.summary["fits"] = json::array();
  for (unsigned k : ks) {
    const double exponent = k - 1.0 / (6.0 * pr.e_p);
    std::vector<double> xs, ys;
    for (std::uint64_t n : grid) {
      const CountStats stats = count_A_stats(pr.p, Box::upto(n), k, opts);
      const BigInt trivial = trivial_count(n, k);
      const BigInt nontrivial = stats.a - trivial;
      const BigRational nk(pow(from_u64(n), k));
      json row;
      row["poly"] = to_string(pr.p);
      row["N"] = n;
      row["k"] = k;
      row["A"] = big(stats.a);
      row["trivial"] = big(trivial);
      row["nontrivial"] = big(nontrivial);
      row["A_over_Nk"] = n ? json(nearest_double(BigRational(stats.a / nk))) : json(nullptr);
      row["nontrivial_over_Nk"] = n ? json(nearest_double(BigRational(nontrivial / nk))) : json(nullptr);
      // smallest eps with nontrivial = N^(k - 1/(6 e_P) + eps) at this N
      row["eps"] = (n > 1 && sgn(nontrivial) > 0)
                       ? json(std::log(nontrivial.get_d()) / std::log(static_cast<double>(n)) - exponent)
                       : json(nullptr);
      row["lambda"] = lambda_for(c, n);
      row["M"] = c.m ? c.m : default_m(pr.m_p.value_or(1), n);
      row["distinct_products"] = stats.distinct_keys;
      row["passes"] = stats.passes;
      r.check(sgn(nontrivial) >= 0, "A >= trivial N=" + std::to_string(n) + " k=" + std::to_string(k));
      if (c.brute) {
        TallyOptions topts;
        topts.count = opts;
        try {
          const SolutionTally t = tally(pr, n, k, topts);
          row["R"] = t.r_count ? big(*t.r_count) : json(nullptr);
          row["N_prime"] = t.nprime_count ? big(*t.nprime_count) : json(nullptr);
          if (t.r_count) r.check(true, "tally inequality N=" + std::to_string(n) + " k=" + std::to_string(k));
        } catch (const InconsistencyError& e) {
          row["R"] = nullptr;
          row["N_prime"] = nullptr;
          r.check(false, e.what());
        }
      }
      r.rows.push_back(row);
      xs.push_back(static_cast<double>(n));
      ys.push_back(nontrivial.get_d());
    }
    json fit;
    fit["k"] = k;
    fit["slope_nontrivial"] = real(loglog_slope(xs, ys));
    fit["theorem_exponent"] = exponent;
    r.summary["fits"].push_back(fit);
  }
}

void cmd_bounds(const Config& c, Report& r) {
  const Prepared pp = prepare(c);
  const PolyProfile& pr = pp.profile;
  const auto grid = c.n || !c.grid_text.empty() ? resolve_grid(c, 100) : std::vector<std::uint64_t>{100, 1000};
  const auto ks = resolve_k(c, {2});
  const BigRational cc = resolve_c(c);
  echo_poly(r, c, pp);
  r.config_echo["l_max"] = c.l_max;
  r.config_echo["z_max"] = c.z_max;
  r.config_echo["N_grid"] = u64_list(grid);
  r.config_echo["k"] = k_list(ks);
  r.config_echo["lambda"] = c.lambda ? json(c.lambda) : json("floor(N^(1/6))");
  r.config_echo["C"] = cc.get_str();
  r.config_echo["format"] = c.format;

  std::uint64_t advisory_rows = 0, advisory_holds = 0;
  auto record = [&](const BoundReport& b) {
    r.rows.push_back(bound_row(b));
    if (b.advisory) {
      ++advisory_rows;
      if (b.holds) ++advisory_holds;
    } else {
      r.check(b.holds, label(b));
    }
  };
  for (std::uint64_t l = 1; l <= c.l_max; ++l) record(huxley_check(pr, l));
  for (std::uint64_t n : grid)
    for (std::uint64_t z = 1; z <= c.z_max; ++z) record(prop22_check(pr, from_u64(z), n));
  static constexpr std::uint64_t kSampleZ[] = {2, 6, 12, 24, 36, 60, 120, 180, 360, 720, 840, 1260, 1680, 2520};
  for (unsigned k : ks)
    for (std::uint64_t n : grid)
      for (std::uint64_t z : kSampleZ)
        if (z <= c.z_max) record(cor24_report(pr, n, k, from_u64(z), lambda_for(c, n), cc));
  r.summary["advisory_rows"] = advisory_rows;
  r.summary["advisory_holds"] = advisory_holds;
}

void cmd_curves(const Config& c, Report& r) {
  const IntPoly p = parse_poly(c.poly_text);
  const PolyProfile pr = make_profile(p);
  const std::uint64_t n = resolve_n(c, 100);
  const std::uint64_t lambda = lambda_for(c, n);
  r.config_echo["command"] = c.command;
  r.config_echo["poly"] = to_string(pr.p);
  r.config_echo["N"] = n;
  r.config_echo["lambda"] = lambda;
  r.config_echo["format"] = c.format;

  std::uint64_t aggregate = 0;
  for (std::uint64_t b = 2; b <= lambda; ++b)
    for (std::uint64_t a = 1; a < b; ++a) {
      const CurveSpec spec{a, b, pr.p, n};
      const auto pts = curve_points(spec);
      const auto verdict = linear_factor_detect(spec);
      json row;
      row["a"] = a;
      row["b"] = b;
      row["N"] = n;
      row["points"] = pts.size();
      row["linear_factor"] = verdict.found;
      row["best_residual"] = real(verdict.best_residual);
      if (n >= 3) {
        const auto bp = bp_bound(n, pr.d);
        row["bp_bound"] = real(bp.value);
        row["bp_log"] = bp.log_value;
        row["bp_valid"] = bp.in_validity_range;
        if (bp.in_validity_range)
          r.check(static_cast<double>(pts.size()) <= bp.value,
                  "points within the integral-point bound a=" + std::to_string(a) + " b=" + std::to_string(b));
      }
      if (pr.eligible)
        r.check(!verdict.found, "no linear factor a=" + std::to_string(a) + " b=" + std::to_string(b));
      aggregate += pts.size();
      r.rows.push_back(row);
    }
  r.summary["eligible"] = pr.eligible;
  r.summary["aggregate"] = aggregate;
}

void cmd_rmf(const Config& c, Report& r) {
  const IntPoly p = parse_poly(c.poly_text);
  const PolyProfile pr = make_profile(p);
  const std::uint64_t n = resolve_n(c, 100);
  const auto ks = resolve_k(c, {1, 2});
  std::vector<std::pair<unsigned, unsigned>> mixed;
  if (!c.mixed_text.empty())
    for (const auto& item : split_list(c.mixed_text)) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ParseError("--mixed: expected a:b, got '" + item + "'");
      mixed.emplace_back(static_cast<unsigned>(parse_u64(item.substr(0, colon), "--mixed")),
                         static_cast<unsigned>(parse_u64(item.substr(colon + 1), "--mixed")));
    }
  r.config_echo["command"] = c.command;
  r.config_echo["poly"] = to_string(pr.p);
  r.config_echo["N"] = n;
  r.config_echo["n0"] = pr.n0;
  r.config_echo["k"] = k_list(ks);
  r.config_echo["trials"] = c.trials;
  r.config_echo["seed"] = c.seed;
  json mixed_echo = json::array();
  for (const auto& [a, b] : mixed) mixed_echo.push_back(std::to_string(a) + ":" + std::to_string(b));
  r.config_echo["mixed"] = mixed_echo;
  r.config_echo["format"] = c.format;

  if (c.trials < 100) throw PreconditionError("--trials must be at least 100");
  const auto samples = sample_partial_sums(pr, n, c.trials, c.seed, c.threads);
  const CountOptions opts{c.threads};
  for (unsigned k : ks) {
    const MomentEstimate m = moment_from_samples(pr, n, k, samples, c.seed, opts);
    const long double dev = m.normalized_estimate - m.exact_target;
    json row;
    row["kind"] = "moment";
    row["k"] = k;
    row["N"] = n;
    row["estimate"] = real(m.normalized_estimate);
    row["std_error"] = real(m.std_error);
    row["target"] = real(m.exact_target);
    row["exact"] = big(m.exact_numerator);
    row["z_score"] = m.std_error > 0 ? real(dev / m.std_error) : json(nullptr);
    r.rows.push_back(row);
    r.check(std::fabs(dev) <= 4 * m.std_error, "moment k=" + std::to_string(k) + " within 4 standard errors");
  }
  const MeanEstimate mean = mean_from_samples(samples);
  json row;
  row["kind"] = "mean";
  row["N"] = n;
  row["estimate"] = real(std::abs(mean.mean));
  row["std_error"] = real(mean.std_error);
  row["target"] = 0.0;
  row["re"] = real(mean.mean.real());
  row["im"] = real(mean.mean.imag());
  row["z_score"] = mean.std_error > 0 ? real(std::abs(mean.mean) / mean.std_error) : json(nullptr);
  r.rows.push_back(row);
  r.check(std::abs(mean.mean) <= 4 * mean.std_error, "mean of S within 4 standard errors of 0");

  for (const auto& [a, b] : mixed) {
    json mrow;
    mrow["kind"] = "mixed";
    mrow["a"] = a;
    mrow["b"] = b;
    mrow["N"] = n;
    mrow["exact"] = big(mixed_moment_exact(pr, n, a, b, opts));
    r.rows.push_back(mrow);
  }
}

json to_json(const Report& r) {
  json root;
  root["tool_version"] = kToolVersion;
  root["config_echo"] = r.config_echo;
  root["rows"] = r.rows;
  root["assertions"] = {{"passed", r.passed}, {"failed", r.failed}};
  if (!r.summary.empty()) root["summary"] = r.summary;
  if (!r.error.empty()) root["error"] = r.error;
  return root;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

// Columns are the union of row keys in first-seen order; cells reuse the JSON number text.
std::string to_csv(const Report& r) {
  std::vector<std::string> cols;
  for (const auto& row : r.rows)
    for (const auto& [key, _] : row.items())
      if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ",";
      if (row.contains(cols[i])) out += csv_cell(row[cols[i]]);
    }
    out += "\n";
  }
  return out;
}

int emit(const Config& c, const Report& r, std::ostream& out, std::ostream& err) {
  const std::string text = c.format == "csv" ? to_csv(r) : to_json(r).dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
    out.flush();
    return kOk;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << c.out << "\n";
    return kUsage;
  }
  f << text;
  return f.good() ? kOk : kResource;
}

void add_common(CLI::App* sub, Config& c, bool with_threads) {
  sub->add_option("--poly", c.poly_text, "Polynomial: ascending coefficients '0,1,1' or an expression 'x(x+1)'")
      ->required();
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "Write the report here instead of stdout");
  if (with_threads) sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Exact counts, bound batteries and moment estimates for products of polynomial values"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Invariants of P: degree, e_P, kernel, discriminant, thresholds");
  add_common(analyze, c, false);

  auto* count = app.add_subcommand("count", "A_{P,2k}([N]) and its trivial/nontrivial split over an N grid");
  add_common(count, c, true);
  count->add_option("--N", c.n, "Single N");
  count->add_option("--N-grid", c.grid_text, "Strictly increasing comma list of N");
  count->add_option("--k", c.k_text, "k or a comma list of k (default 2)");
  count->add_option("--lambda", c.lambda, "Reported lambda (default floor(N^(1/6)))")->check(CLI::Range(1ull, ~0ull));
  count->add_option("--M", c.m, "Reported M (default floor(M(P) N^(1/4)))")->check(CLI::Range(1ull, ~0ull));
  count->add_flag("--brute", c.brute, "Also split solutions into R and N' by enumeration and check the tally inequality");

  auto* bounds = app.add_subcommand("bounds", "Root-count, divisibility and T-count bound batteries");
  add_common(bounds, c, false);
  bounds->add_option("--l-max", c.l_max, "Largest modulus for the root-count check");
  bounds->add_option("--z-max", c.z_max, "Largest z for the divisibility check");
  bounds->add_option("--N", c.n, "Single N");
  bounds->add_option("--N-grid", c.grid_text, "Comma list of N (default 100,1000)");
  bounds->add_option("--k", c.k_text, "k for the T-count rows (default 2)");
  bounds->add_option("--lambda", c.lambda, "lambda for the T-count rows")->check(CLI::Range(1ull, ~0ull));
  bounds->add_option("--C", c.c_text, "Constant for the advisory T-count bound (rational, default 1)");

  auto* curves = app.add_subcommand("curves", "Points on a P(y) = b P(x) for 1 <= a < b <= lambda");
  add_common(curves, c, false);
  curves->add_option("--N", c.n, "Box size (default 100)");
  curves->add_option("--lambda", c.lambda, "Largest b (default floor(N^(1/6)))")->check(CLI::Range(1ull, ~0ull));

  auto* rmf = app.add_subcommand("rmf", "Monte Carlo moments of Steinhaus sums against exact counts");
  add_common(rmf, c, true);
  rmf->add_option("--N", c.n, "Sum length (default 100)");
  rmf->add_option("--k", c.k_text, "Comma list of moment orders (default 1,2)");
  rmf->add_option("--trials", c.trials, "Number of trials, at least 100");
  rmf->add_option("--seed", c.seed, "Seed of the whole run");
  rmf->add_option("--mixed", c.mixed_text, "Comma list of a:b mixed moments to compute exactly");

  std::vector<std::string> argv_store{"paucity"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Report r;
  try {
    if (analyze->parsed()) {
      c.command = "analyze";
      cmd_analyze(c, r);
    } else if (count->parsed()) {
      c.command = "count";
      cmd_count(c, r);
    } else if (bounds->parsed()) {
      c.command = "bounds";
      cmd_bounds(c, r);
    } else if (curves->parsed()) {
      c.command = "curves";
      cmd_curves(c, r);
    } else {
      c.command = "rmf";
      cmd_rmf(c, r);
    }
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    r.error = e.what();
    emit(c, r, out, err);
    return kResource;
  } catch (const InconsistencyError& e) {
    err << "error: " << e.what() << "\n";
    r.error = e.what();
    r.failed.push_back(e.what());
    emit(c, r, out, err);
    return kAssertionFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    r.error = "out of memory";
    emit(c, r, out, err);
    return kResource;
  }
  const int io = emit(c, r, out, err);
  if (io != kOk) return io;
  return r.failed.empty() ? kOk : kAssertionFailed;
}

}  // namespace paucity::app
