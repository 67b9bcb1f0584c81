#pragma once

/// \file io.hpp
/// \brief Text formats: character rows, descriptor files, and ZeroRecord streams as JSON
/// lines or RFC 4180 CSV. Numbers travel as decimal strings so nothing passes through a
/// double on the way.

#include <lzero/characters.hpp>
#include <lzero/errors.hpp>
#include <lzero/generic_l.hpp>
#include <lzero/modular_l.hpp>
#include <lzero/solver.hpp>

#include <gmpxx.h>
#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lzero::io {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Exact value of "3", "-1/4", "0.125" or "2.5e-3".
inline mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw std::invalid_argument("empty number");
  s = s.substr(first, last - first + 1);
  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0 || q.get_den() == 0)
      throw std::invalid_argument("invalid rational: " + s);
    q.canonicalize();
    return q;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  for (; pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'); ++pos) {
    if (s[pos] == '.') {
      if (seen_point) throw std::invalid_argument("invalid number: " + s);
      seen_point = true;
    } else {
      digits += s[pos];
      if (seen_point) ++scale;
    }
  }
  if (digits.empty()) throw std::invalid_argument("invalid number: " + s);
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    char* end = nullptr;
    const long exponent = std::strtol(s.c_str() + pos + 1, &end, 10);
    if (end == s.c_str() + pos + 1 || *end != '\0') throw std::invalid_argument("invalid exponent: " + s);
    scale -= exponent;
    pos = s.size();
  }
  if (pos != s.size()) throw std::invalid_argument("invalid number: " + s);
  mpq_class q(mpz_class(digits, 10));
  mpz_class ten_power;
  mpz_ui_pow_ui(ten_power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale >= 0) q /= ten_power; else q *= ten_power;
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

inline mpq_class rational_from_json(const json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a decimal string, got " + j.dump());
}

/// r(1), ..., r(k) separated by commas or spaces; "-" or "null" marks gcd(n, k) > 1.
/// Throws InvalidCharacter when the row violates the character axioms.
inline DirichletCharacter parse_character_row(long modulus, std::string_view text) {
  std::vector<Rotation> row;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token == "-" || token == "null") {
      row.emplace_back(std::nullopt);
    } else {
      try {
        row.emplace_back(parse_rational(token));
      } catch (const std::invalid_argument& e) {
        throw InvalidCharacter(std::string("bad rotation number: ") + e.what());
      }
    }
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) flush(); else token += ch;
  }
  flush();
  return DirichletCharacter(modulus, std::move(row));
}

inline json row_to_json(const DirichletCharacter& chi) {
  json row = json::array();
  for (const auto& r : chi.row()) row.push_back(r ? json(r->get_str()) : json(nullptr));
  return row;
}

inline json character_to_json(const DirichletCharacter& chi) {
  return {{"modulus", chi.modulus()}, {"rotations", row_to_json(chi)}};
}

/// {"k": 7, "row": [...]} or {"modulus": 7, "rotations": [...]}; null or "-" for zero values.
inline DirichletCharacter character_from_json(const json& j) {
  const long modulus = j.contains("k") ? j.at("k").get<long>() : j.at("modulus").get<long>();
  std::vector<Rotation> row;
  for (const auto& r : j.contains("row") ? j.at("row") : j.at("rotations")) {
    if (r.is_null() || (r.is_string() && r.get<std::string>() == "-")) row.emplace_back(std::nullopt);
    else row.emplace_back(rational_from_json(r));
  }
  return DirichletCharacter(modulus, std::move(row));
}

/// Builds a descriptor family from
///   {"label": "...", "degree": d, "conductor": k,
///    "local_params": ["0", {"re": "1/2", "im": "3"}, ...],
///    "beta": "0.25"                       (optional; derived when absent)
///    "series": {"type": "character", "k": 7, "row": [...]}
///            | {"type": "periodic", "coefficients": ["1", ["0", "1"], ...]}
///            | {"type": "ramanujan"}}
/// A top-level "coefficients" may replace "series": an inline array is a periodic
/// sequence, a string names a builtin ("ramanujan"). Local parameters may also be
/// written as [re, im]. Throws InvalidDescriptor on malformed input.
inline GenericFamily descriptor_from_json(const json& j) {
  try {
    json series_json;
    if (j.contains("series")) {
      series_json = j.at("series");
    } else if (j.at("coefficients").is_string()) {
      series_json = {{"type", j.at("coefficients").get<std::string>()}};
    } else {
      series_json = {{"type", "periodic"}, {"coefficients", j.at("coefficients")}};
    }
    const std::string type = series_json.at("type").get<std::string>();
    std::shared_ptr<const LSeries> series;
    if (type == "character") {
      series = std::make_shared<CharacterSeries>(character_from_json(series_json));
    } else if (type == "periodic") {
      std::vector<std::pair<mpq_class, mpq_class>> period;
      for (const auto& c : series_json.at("coefficients")) {
        if (c.is_array()) period.emplace_back(rational_from_json(c.at(0)), rational_from_json(c.at(1)));
        else period.emplace_back(rational_from_json(c), mpq_class(0));
      }
      series = std::make_shared<PeriodicSeries>(std::move(period));
    } else if (type == "ramanujan") {
      series = std::make_shared<ModularShiftedSeries>(ModularForm::ramanujan_delta());
    } else {
      throw InvalidDescriptor("unknown series type '" + type + "'");
    }
    std::vector<LocalParameter> params;
    for (const auto& p : j.at("local_params")) {
      if (p.is_object()) params.push_back({rational_from_json(p.at("re")), rational_from_json(p.value("im", json("0")))});
      else if (p.is_array()) params.push_back({rational_from_json(p.at(0)), rational_from_json(p.at(1))});
      else params.push_back({rational_from_json(p), mpq_class(0)});
    }
    PhaseProvider beta;
    if (j.contains("beta") && !j.at("beta").is_null()) {
      const mpq_class value = rational_from_json(j.at("beta"));
      beta = [value](const PrecisionContext& ctx) {
        WorkingPrecision wp(ctx.bits());
        return Real(value);
      };
    }
    LFunctionDescriptor descriptor(j.at("degree").get<int>(), j.at("conductor").get<long>(), std::move(params),
                                   std::move(beta), std::move(series));
    return GenericFamily{std::move(descriptor), j.value("label", std::string("descriptor")), j.dump()};
  } catch (const json::exception& e) {
    throw InvalidDescriptor(std::string("descriptor: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidDescriptor(std::string("descriptor: ") + e.what());
  }
}

inline json family_to_json(const Family& family) {
  struct Visitor {
    json operator()(const DirichletFamily& f) const {
      return {{"type", "dirichlet"}, {"k", f.character.modulus()}, {"row", row_to_json(f.character)}};
    }
    json operator()(const ModularFamily& f) const {
      if (f.form.weight() == 12 && f.form.extensible()) return {{"type", "ramanujan"}};
      return {{"type", "modular"}, {"weight", f.form.weight()}};
    }
    json operator()(const GenericFamily& f) const {
      return {{"type", "generic"}, {"descriptor", f.source.empty() ? json(f.label) : json::parse(f.source)}};
    }
  };
  return std::visit(Visitor{}, family);
}

/// Ordinate with as many decimals as were verified.
inline std::string format_ordinate(const ZeroRecord& r) { return r.y.to_fixed(r.digits_achieved); }
inline std::string format_residual(const ZeroRecord& r) { return r.residual.to_sci(6); }
inline std::string format_guess(double g) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", g);
  return buf;
}

inline json record_to_json(const ZeroRecord& r, const json& family) {
  return {{"schema_version", kSchemaVersion},
          {"family", family},
          {"n", r.n},
          {"y", format_ordinate(r)},
          {"guess", r.guess ? json(format_guess(*r.guess)) : json(nullptr)},
          {"residual", format_residual(r)},
          {"digits_achieved", r.digits_achieved}};
}

/// Inverse of record_to_json; the family object is returned through `family` when given.
inline ZeroRecord record_from_json(const json& j, json* family = nullptr) {
  if (j.at("schema_version").get<std::string>() != kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version " + j.at("schema_version").dump());
  ZeroRecord r;
  r.n = j.at("n").get<long>();
  r.digits_achieved = j.at("digits_achieved").get<int>();
  WorkingPrecision wp(digits_to_bits(r.digits_achieved + 20));
  r.y = Real(j.at("y").get<std::string>());
  r.residual = Real(j.at("residual").get<std::string>());
  if (!j.at("guess").is_null()) r.guess = std::strtod(j.at("guess").get<std::string>().c_str(), nullptr);
  r.family = j.at("family").dump();
  if (family) *family = j.at("family");
  return r;
}

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline const char* csv_header() { return "schema_version,family,n,y,guess,residual,digits_achieved"; }

inline std::string record_to_csv(const ZeroRecord& r, const json& family) {
  std::ostringstream out;
  out << kSchemaVersion << ',' << csv_quote(family.dump()) << ',' << r.n << ',' << format_ordinate(r) << ','
      << (r.guess ? format_guess(*r.guess) : std::string()) << ',' << format_residual(r) << ','
      << r.digits_achieved;
  return out.str();
}

}  // namespace lzero::io
