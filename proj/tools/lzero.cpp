// lzero: zeros, counts and checks for Dirichlet, modular and descriptor L-functions.
//
// Exit codes: 0 success, 2 some label failed to solve, 3 verification failed, 64 usage.

#include <lzero/lzero.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using lzero::io::json;

constexpr int kExitPartial = 2;
constexpr int kExitVerify = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FamilyOptions {
  long modulus = 0;
  std::string char_row;
  long char_index = 0;
  std::string char_file;
  bool ramanujan = false;
  std::string descriptor;

  void attach(CLI::App& app) {
    app.add_option("--modulus", modulus, "Dirichlet modulus k");
    app.add_option("--char-row", char_row, "rotation numbers r(1..k), '-' where gcd(n, k) > 1");
    app.add_option("--char-index", char_index, "1-based position in the canonical enumeration");
    app.add_option("--char-file", char_file, "file holding a character row");
    app.add_flag("--ramanujan", ramanujan, "Ramanujan Delta, weight 12");
    app.add_option("--descriptor", descriptor, "JSON descriptor file");
  }

  bool given() const { return modulus != 0 || ramanujan || !descriptor.empty(); }

  lzero::Family build() const {
    const int selected = (modulus != 0) + ramanujan + !descriptor.empty();
    if (selected != 1) throw UsageError("choose exactly one of --modulus, --ramanujan, --descriptor");
    if (ramanujan) return lzero::ModularFamily{lzero::ModularForm::ramanujan_delta()};
    if (!descriptor.empty()) {
      std::ifstream in(descriptor);
      if (!in) throw UsageError("cannot read " + descriptor);
      return lzero::io::descriptor_from_json(json::parse(in));
    }
    if (modulus < 1) throw UsageError("--modulus must be positive");
    std::string row = char_row;
    if (!char_file.empty()) {
      std::ifstream in(char_file);
      if (!in) throw UsageError("cannot read " + char_file);
      std::stringstream buffer;
      buffer << in.rdbuf();
      row = buffer.str();
    }
    if (!row.empty()) return lzero::DirichletFamily{lzero::io::parse_character_row(modulus, row)};
    const auto all = lzero::enumerate_characters(modulus);
    if (char_index == 0 && modulus == 1) return lzero::DirichletFamily{all.front()};
    if (char_index < 1 || char_index > static_cast<long>(all.size()))
      throw UsageError("give --char-row or a --char-index in 1.." + std::to_string(all.size()));
    return lzero::DirichletFamily{all[static_cast<std::size_t>(char_index - 1)]};
  }
};

/// "auto" or "P" or "P,N".
std::optional<lzero::LabelOffset> parse_n0(const std::string& text) {
  if (text == "auto") return std::nullopt;
  lzero::LabelOffset out;
  const auto comma = text.find(',');
  try {
    out.positive = std::stol(text.substr(0, comma));
    out.negative = comma == std::string::npos ? out.positive : std::stol(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw UsageError("--n0 expects 'auto', 'P' or 'P,N'");
  }
  return out;
}

int default_digits() {
  if (const char* env = std::getenv("LZERO_DIGITS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError("LZERO_DIGITS is not an integer");
    }
  }
  return 30;
}

struct Common {
  FamilyOptions family;
  int digits = 0;
  std::string n0 = "auto";
  std::string format = "json";

  void attach(CLI::App& app, bool with_format = true) {
    family.attach(app);
    app.add_option("--digits", digits, "target decimal places (default LZERO_DIGITS or 30)");
    app.add_option("--n0", n0, "label offset: auto, P or P,N");
    if (with_format) app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }

  lzero::PrecisionContext context() const {
    const int d = digits > 0 ? digits : default_digits();
    if (d < 15) throw UsageError("--digits must be at least 15");
    return lzero::PrecisionContext(d);
  }

  lzero::LabelOffset offsets(const lzero::ZeroEquation& eq, const lzero::PrecisionContext& ctx) const {
    if (auto fixed = parse_n0(n0)) return *fixed;
    return lzero::detect_n0(eq, ctx);
  }
};

void emit_records(const std::vector<lzero::ZeroRecord>& records, const json& family, const std::string& format) {
  if (format == "csv") std::cout << lzero::io::csv_header() << "\r\n";
  for (const auto& r : records) {
    if (format == "csv") std::cout << lzero::io::record_to_csv(r, family) << "\r\n";
    else std::cout << lzero::io::record_to_json(r, family).dump() << "\n";
  }
}

void report_failures(const std::vector<std::pair<long, std::string>>& failures) {
  for (const auto& [n, message] : failures) std::cerr << "n=" << n << ": " << message << "\n";
}

int cmd_zeros(const Common& c, long n_from, long n_to, std::optional<double> delta_floor, unsigned threads) {
  const lzero::PrecisionContext ctx = c.context();
  const lzero::Family family = c.family.build();
  const auto eq = lzero::make_equation(family, ctx);
  lzero::SolverConfig cfg;
  cfg.delta_floor = delta_floor;
  cfg.n0 = c.offsets(*eq, ctx);
  const auto result = lzero::solve_range(n_from, n_to, *eq, cfg, ctx, threads);
  emit_records(result.records, lzero::io::family_to_json(family), c.format);
  report_failures(result.failures);
  return result.failures.empty() ? 0 : kExitPartial;
}

int cmd_guess(const Common& c, long n_from, long n_to) {
  const lzero::PrecisionContext ctx = c.context();
  const lzero::Family family = c.family.build();
  const auto eq = lzero::make_equation(family, ctx);
  const lzero::LabelOffset n0 = c.offsets(*eq, ctx);
  const json family_json = lzero::io::family_to_json(family);
  int status = 0;
  for (long n = n_from; n <= n_to; ++n) {
    json out{{"schema_version", lzero::io::kSchemaVersion}, {"family", family_json}, {"n", n}};
    try {
      lzero::WorkingPrecision wp(ctx.bits());
      out["guess"] = eq->lambert_guess(n, n - n0.for_label(n), ctx).to_fixed(ctx.digits);
    } catch (const lzero::DomainError& e) {
      out["guess"] = nullptr;
      std::cerr << "n=" << n << ": " << e.what() << "\n";
      status = kExitPartial;
    }
    std::cout << out.dump() << "\n";
  }
  return status;
}

int cmd_count(const Common& c, const std::string& height_text, const std::string& sign_text, bool asymptotic) {
  const lzero::PrecisionContext ctx = c.context();
  const lzero::Family family = c.family.build();
  const auto eq = lzero::make_equation(family, ctx);
  const lzero::LabelOffset n0 = c.offsets(*eq, ctx);
  const int sign = sign_text == "-" ? -1 : 1;
  lzero::WorkingPrecision wp(ctx.bits());
  lzero::Real height;
  try {
    height = lzero::Real(height_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (height <= 0L) throw UsageError("--height must be positive");
  const lzero::Real count = lzero::count_zeros_line(height, sign, *eq, n0, ctx);
  const long nearest = lzero::round(count).to_long();
  json out{{"schema_version", lzero::io::kSchemaVersion},
           {"family", lzero::io::family_to_json(family)},
           {"height", height_text},
           {"sign", sign > 0 ? "+" : "-"},
           {"count", count.to_fixed(12)},
           {"nearest", nearest}};
  if (asymptotic) out["asymptotic"] = lzero::count_asymptotic(height, sign, *eq, n0, ctx).to_fixed(12);
  // On the line the count is integral on both sides of a zero, so look for the jump itself.
  const lzero::Real eps = lzero::pow10(-8) * std::max(height, lzero::Real(1));
  const long below = lzero::round(lzero::count_zeros_line(height - eps, sign, *eq, n0, ctx)).to_long();
  const long above = lzero::round(lzero::count_zeros_line(height + eps, sign, *eq, n0, ctx)).to_long();
  if (below != above)
    std::cerr << "warning: a zero lies within " << eps.to_sci(1) << " of the height; the count jumps from " << below
              << " to " << above << " there\n";
  else if (lzero::abs(count - nearest) > lzero::Real(1e-2))
    std::cerr << "warning: count is not near an integer; the height may sit on a zero\n";
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_tau(std::size_t count, const std::string& format) {
  const lzero::TauSeries tau = lzero::tau_coefficients(count);
  if (format == "csv") std::cout << "n,tau\r\n";
  for (std::size_t n = 1; n <= tau.length(); ++n) {
    if (format == "csv") std::cout << n << ',' << tau(n).get_str() << "\r\n";
    else std::cout << json{{"n", n}, {"tau", tau(n).get_str()}}.dump() << "\n";
  }
  return 0;
}

int cmd_characters(long modulus) {
  if (modulus < 1) throw UsageError("--modulus must be positive");
  const auto all = lzero::enumerate_characters(modulus);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& chi = all[i];
    const auto inducing = lzero::conductor(chi);
    json out = lzero::io::character_to_json(chi);
    out["index"] = i + 1;
    out["parity"] = chi.parity();
    out["conductor"] = inducing.conductor;
    out["primitive"] = inducing.conductor == modulus;
    out["real"] = chi.is_real();
    std::cout << out.dump() << "\n";
  }
  return 0;
}

/// Functional-equation residual at a few fixed points of the strip.
double functional_equation_check(const lzero::Family& family, const lzero::PrecisionContext& ctx) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> sigma(0.05, 0.95);
  std::uniform_real_distribution<double> height(-30.0, 30.0);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    lzero::WorkingPrecision wp(ctx.bits());
    const double s = sigma(rng);
    const double t = height(rng);
    if (const auto* m = std::get_if<lzero::ModularFamily>(&family)) {
      const lzero::Real k(static_cast<long>(m->form.weight()));
      const lzero::Complex z(lzero::Real(s) * k, lzero::Real(t));
      const lzero::Complex a = lzero::lambda_value(z, m->form, ctx);
      lzero::Complex b = lzero::lambda_value(lzero::Complex(k) - z, m->form, ctx);
      if (m->form.sign() < 0) b = -b;
      worst = std::max(worst, lzero::abs(a - b).to_double());
      continue;
    }
    const lzero::LFunctionDescriptor f = std::holds_alternative<lzero::DirichletFamily>(family)
                                             ? lzero::dirichlet_descriptor(std::get<lzero::DirichletFamily>(family).character)
                                             : std::get<lzero::GenericFamily>(family).descriptor;
    const lzero::Complex z{lzero::Real(s), lzero::Real(t)};
    worst = std::max(worst, lzero::functional_equation_residual(z, f, ctx).to_double());
  }
  return worst;
}

lzero::Family family_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "dirichlet") return lzero::DirichletFamily{lzero::io::character_from_json(j)};
  if (type == "ramanujan") return lzero::ModularFamily{lzero::ModularForm::ramanujan_delta()};
  if (type == "generic") return lzero::io::descriptor_from_json(j.at("descriptor"));
  throw UsageError("cannot rebuild family of type '" + type + "' from records; pass a family selector");
}

int cmd_verify(const Common& c, long n_from, long n_to, const std::string& records_file, unsigned threads) {
  const lzero::PrecisionContext ctx = c.context();
  std::vector<lzero::ZeroRecord> records;
  std::optional<lzero::Family> family;
  std::vector<std::pair<long, std::string>> failures;
  if (!records_file.empty()) {
    std::ifstream in(records_file);
    if (!in) throw UsageError("cannot read " + records_file);
    json family_json;
    for (std::string line; std::getline(in, line);) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      records.push_back(lzero::io::record_from_json(json::parse(line), &family_json));
    }
    if (records.empty()) throw UsageError(records_file + " holds no records");
    family = c.family.given() ? c.family.build() : family_from_json(family_json);
  } else {
    family = c.family.build();
  }
  const auto eq = lzero::make_equation(*family, ctx);
  lzero::SolverConfig cfg;
  cfg.n0 = c.offsets(*eq, ctx);
  if (records_file.empty()) {
    auto result = lzero::solve_range(n_from, n_to, *eq, cfg, ctx, threads);
    records = std::move(result.records);
    failures = std::move(result.failures);
  }

  json checks = json::array();
  bool passed = failures.empty();
  auto add = [&](const std::string& name, bool ok, json detail) {
    checks.push_back({{"name", name}, {"passed", ok}, {"detail", std::move(detail)}});
    passed = passed && ok;
  };
  if (!failures.empty()) {
    json items = json::array();
    for (const auto& [n, message] : failures) items.push_back({{"n", n}, {"error", message}});
    add("solve", false, items);
  }

  const double residual_gate = std::pow(10.0, -(ctx.digits - 5));
  double worst_residual = 0.0;
  for (const auto& r : records) {
    lzero::WorkingPrecision wp(ctx.bits());
    const double residual = eq->residual(r.y, ctx).to_double();
    worst_residual = std::max(worst_residual, residual);
  }
  add("residual", worst_residual < residual_gate, {{"max", worst_residual}, {"gate", residual_gate}});

  lzero::StaircaseReport report;
  bool staircase_ok = true;
  try {
    lzero::verify_staircase(records, *eq, cfg.n0, ctx, 1e-3, &report);
  } catch (const lzero::StaircaseViolation&) {
    staircase_ok = false;
  }
  json violations = json::array();
  for (const auto& [a, b] : report.violations) violations.push_back({a, b});
  add("staircase", staircase_ok,
      {{"max_deviation", report.max_deviation},
       {"max_strip_deviation", report.max_strip_deviation},
       {"violations", violations}});
  add("strip_count", report.max_strip_deviation < 1e-3, {{"max_deviation", report.max_strip_deviation}});

  const double fe = functional_equation_check(*family, ctx);
  add("functional_equation", fe < std::pow(10.0, -(ctx.digits - 5)), {{"max", fe}});

  if (const auto* d = std::get_if<lzero::DirichletFamily>(&*family); d && !d->character.is_real()) {
    // Zeros below the axis are the conjugate character's zeros above it, reflected.
    const lzero::DirichletEquation dual(d->character.conjugate(), ctx);
    lzero::SolverConfig dual_cfg;
    dual_cfg.n0 = lzero::detect_n0(dual, ctx);
    double worst = 0.0;
    bool any = false;
    for (const auto& r : records) {
      if (r.n > 0) continue;
      any = true;
      const auto mirror = lzero::solve_nth_zero(1 - r.n, dual, dual_cfg, ctx);
      lzero::WorkingPrecision wp(ctx.bits());
      worst = std::max(worst, lzero::abs(r.y + mirror.y).to_double());
    }
    if (any) add("duality", worst < std::pow(10.0, -(ctx.digits - 10)), {{"max", worst}});
  }

  std::cout << json{{"schema_version", lzero::io::kSchemaVersion},
                    {"family", lzero::io::family_to_json(*family)},
                    {"records", records.size()},
                    {"checks", checks},
                    {"result", passed ? "PASS" : "FAIL"}}
                   .dump()
            << "\n";
  if (!passed) {
    for (const auto& check : checks)
      if (!check["passed"].get<bool>()) std::cerr << "failed: " << check["name"].get<std::string>() << " "
                                                  << check["detail"].dump() << "\n";
  }
  return passed ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zeros of L-functions on the critical line"};
  app.require_subcommand(1);

  Common zeros_opts;
  long zeros_from = 1, zeros_to = 1;
  std::optional<double> delta_floor;
  unsigned threads = 0;
  auto* zeros = app.add_subcommand("zeros", "solve for ordinates n-from..n-to");
  zeros_opts.attach(*zeros);
  zeros->add_option("--n-from", zeros_from)->required();
  zeros->add_option("--n-to", zeros_to)->required();
  zeros->add_option("--delta-floor", delta_floor, "smallest delta of the annealing schedule");
  zeros->add_option("--threads", threads, "worker threads (default: all cores)");

  Common count_opts;
  std::string height, sign = "+";
  bool asymptotic = false;
  auto* count = app.add_subcommand("count", "number of zeros between the axis and a height");
  count_opts.attach(*count, false);
  count->add_option("--height", height)->required();
  count->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));
  count->add_flag("--asymptotic", asymptotic, "also print the Stirling-order count");

  Common verify_opts;
  long verify_from = 1, verify_to = 10;
  std::string records_file;
  unsigned verify_threads = 0;
  auto* verify = app.add_subcommand("verify", "solve a range and check residuals, staircase, symmetry");
  verify_opts.attach(*verify, false);
  verify->add_option("--n-from", verify_from);
  verify->add_option("--n-to", verify_to);
  verify->add_option("--records", records_file, "check these JSON-lines records instead of solving");
  verify->add_option("--threads", verify_threads);

  std::size_t tau_count = 10;
  std::string tau_format = "json";
  auto* tau = app.add_subcommand("tau", "Ramanujan tau(1..N)");
  tau->add_option("--count", tau_count)->check(CLI::PositiveNumber);
  tau->add_option("--format", tau_format)->check(CLI::IsMember({"json", "csv"}));

  long characters_modulus = 0;
  auto* characters = app.add_subcommand("characters", "characters mod k in canonical order");
  characters->add_option("--modulus", characters_modulus)->required();

  Common guess_opts;
  long guess_from = 1, guess_to = 1;
  auto* guess = app.add_subcommand("guess", "Lambert-W estimates of the ordinates");
  guess_opts.attach(*guess, false);
  guess->add_option("--n-from", guess_from)->required();
  guess->add_option("--n-to", guess_to)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : kExitUsage;
  }

  try {
    if (*zeros) return cmd_zeros(zeros_opts, zeros_from, zeros_to, delta_floor, threads);
    if (*count) return cmd_count(count_opts, height, sign, asymptotic);
    if (*verify) return cmd_verify(verify_opts, verify_from, verify_to, records_file, verify_threads);
    if (*tau) return cmd_tau(tau_count, tau_format);
    if (*characters) return cmd_characters(characters_modulus);
    if (*guess) return cmd_guess(guess_opts, guess_from, guess_to);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lzero::InvalidCharacter& e) {
    std::cerr << "invalid character: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lzero::InvalidDescriptor& e) {
    std::cerr << "invalid descriptor: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
