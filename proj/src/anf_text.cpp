#include "bentkit/anf_text.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

namespace bentkit {

namespace {

constexpr std::string_view kOplus = "\xE2\x8A\x95";  // U+2295

std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::vector<std::string> split_terms(const std::string& text, bool allow_oplus) {
  std::string normalized;
  normalized.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (allow_oplus && text.compare(i, kOplus.size(), kOplus) == 0) {
      normalized.push_back('+');
      i += kOplus.size();
    } else {
      normalized.push_back(text[i++]);
    }
  }
  std::vector<std::string> terms;
  std::size_t start = 0;
  while (true) {
    const auto plus = normalized.find('+', start);
    terms.push_back(normalized.substr(start, plus - start));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return terms;
}

Point parse_standard_term(const std::string& term, int n) {
  if (term == "1") return 0;
  Point mask = 0;
  std::size_t i = 0;
  while (i < term.size()) {
    if (term[i] != 'x') throw ParseError("expected 'x' in term '" + term + "'");
    ++i;
    std::size_t j = i;
    while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j]))) ++j;
    if (j == i) throw ParseError("missing variable index in term '" + term + "'");
    const int var = std::stoi(term.substr(i, j - i));
    if (var < 1 || var > n) {
      throw ParseError("variable x" + std::to_string(var) + " outside 1.." + std::to_string(n));
    }
    const Point bit = Point{1} << (var - 1);
    if (mask & bit) throw ParseError("repeated variable in term '" + term + "'");
    mask |= bit;
    i = j;
    if (i < term.size()) {
      if (term[i] != '*') throw ParseError("expected '*' in term '" + term + "'");
      ++i;
      if (i == term.size()) throw ParseError("dangling '*' in term '" + term + "'");
    }
  }
  return mask;
}

Point parse_digit_term(const std::string& term, int n) {
  Point mask = 0;
  for (char c : term) {
    if (c < '1' || c > '9') throw ParseError("invalid digit in term '" + term + "'");
    const int var = c - '0';
    if (var > n) throw ParseError("variable " + std::to_string(var) + " exceeds n");
    const Point bit = Point{1} << (var - 1);
    if (mask & bit) throw ParseError("repeated variable in term '" + term + "'");
    mask |= bit;
  }
  return mask;
}

std::vector<Point> display_order(const Anf& anf) {
  std::vector<Point> ms(anf.monomials().begin(), anf.monomials().end());
  // By degree, then by the variable index sequence.
  auto key = [](Point m) {
    std::vector<int> vars;
    for (Point w = m; w != 0; w &= w - 1) vars.push_back(std::countr_zero(w));
    return vars;
  };
  std::sort(ms.begin(), ms.end(), [&](Point a, Point b) {
    const int da = std::popcount(a);
    const int db = std::popcount(b);
    if (da != db) return da < db;
    return key(a) < key(b);
  });
  return ms;
}

}  // namespace

Anf parse_anf(std::string_view text, int n, AnfSyntax syntax) {
  if (n < 1 || n > kMaxVars) throw InvalidInput("variable count out of range");
  const std::string compact = strip_spaces(text);
  if (compact.empty()) throw ParseError("empty ANF text");
  if (compact == "0") return Anf(n, {});
  std::vector<Point> monomials;
  if (syntax == AnfSyntax::kDigits) {
    if (n > 9) throw InvalidInput("digit shorthand is only unambiguous for n <= 9");
    for (const auto& term : split_terms(compact, true)) {
      if (term.empty()) throw ParseError("empty term in '" + compact + "'");
      monomials.push_back(parse_digit_term(term, n));
    }
  } else {
    for (const auto& term : split_terms(compact, false)) {
      if (term.empty()) throw ParseError("empty term in '" + compact + "'");
      monomials.push_back(parse_standard_term(term, n));
    }
  }
  return Anf(n, std::move(monomials));
}

std::string format_anf(const Anf& anf) {
  if (anf.empty()) return "0";
  std::string out;
  for (Point m : display_order(anf)) {
    if (!out.empty()) out += '+';
    if (m == 0) {
      out += '1';
      continue;
    }
    bool first = true;
    for (Point w = m; w != 0; w &= w - 1) {
      if (!first) out += '*';
      out += 'x' + std::to_string(std::countr_zero(w) + 1);
      first = false;
    }
  }
  return out;
}

std::string format_anf_digits(const Anf& anf) {
  if (anf.num_vars() > 9) throw InvalidInput("digit shorthand is only unambiguous for n <= 9");
  if (anf.contains(0)) throw InvalidInput("digit shorthand cannot express a constant term");
  if (anf.empty()) return "0";
  std::string out;
  for (Point m : display_order(anf)) {
    if (!out.empty()) out += " + ";
    for (Point w = m; w != 0; w &= w - 1) out += static_cast<char>('1' + std::countr_zero(w));
  }
  return out;
}

FunctionRecord parse_function_json(std::string_view json_text, AnfSyntax syntax) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("coords")) {
    throw ParseError("function record needs \"n\" and \"coords\"");
  }
  if (!j["n"].is_number_integer() || !j["coords"].is_array() || j["coords"].empty()) {
    throw ParseError("function record has malformed \"n\" or \"coords\"");
  }
  const int n = j["n"].get<int>();
  std::vector<BooleanFunction> coords;
  for (const auto& c : j["coords"]) {
    if (!c.is_string()) throw ParseError("coordinates must be ANF strings");
    coords.push_back(anf_to_table(parse_anf(c.get<std::string>(), n, syntax)));
  }
  if (j.contains("m") && (!j["m"].is_number_integer() || j["m"].get<std::size_t>() != coords.size())) {
    throw ParseError("\"m\" does not match the number of coordinates");
  }
  FunctionRecord rec{VectorialFunction(std::move(coords)), {}};
  if (j.contains("label") && j["label"].is_string()) rec.label = j["label"].get<std::string>();
  return rec;
}

std::string function_to_json(const VectorialFunction& F, const std::string& label) {
  nlohmann::json j;
  if (!label.empty()) j["label"] = label;
  j["n"] = F.n();
  j["m"] = F.m();
  j["coords"] = nlohmann::json::array();
  for (const auto& c : F.coordinates()) j["coords"].push_back(format_anf(table_to_anf(c)));
  return j.dump();
}

}  // namespace bentkit
