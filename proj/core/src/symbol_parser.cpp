#include "hml/symbol_parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <stdexcept>

#include "hml/sobolev.hpp"

namespace hml {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& text, const std::string& why) {
  throw std::invalid_argument("symbol '" + text + "': " + why);
}

double to_number(const std::string& text, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    fail(text, "value of '" + key + "' is not a number: '" + v + "'");
  return out;
}

// "k1=v1,k2=v2" -> map.  A value may itself contain ':' and '='
// (phi=imag_power:gamma=1); only the first '=' splits key from value.
std::map<std::string, std::string> parse_args(const std::string& text, const std::string& body) {
  std::map<std::string, std::string> out;
  if (trim(body).empty()) return out;
  std::size_t start = 0;
  while (start <= body.size()) {
    const std::size_t comma = body.find(',', start);
    const std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) fail(text, "expected key=value, got '" + trim(item) + "'");
    const std::string key = trim(item.substr(0, eq));
    if (key.empty()) fail(text, "empty key");
    if (out.count(key)) fail(text, "duplicate key '" + key + "'");
    out[key] = trim(item.substr(eq + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void expect_keys(const std::string& text, const std::map<std::string, std::string>& args,
                 std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : args) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) fail(text, "unknown key '" + k + "'");
  }
  for (const char* a : allowed)
    if (!args.count(a)) fail(text, std::string("missing key '") + a + "'");
}

}  // namespace

Symbol parse_symbol(const std::string& raw, std::size_t dims) {
  if (dims == 0) throw std::invalid_argument("parse_symbol: dims must be positive");
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("symbol: empty definition");
  if (text.rfind("csv:", 0) == 0) {
    const std::string path = trim(text.substr(4));
    if (path.empty()) fail(text, "missing CSV path");
    return tabulated_symbol(path, dims);
  }

  std::string name = text, body;
  const std::size_t brace = text.find('{');
  if (brace != std::string::npos) {
    if (text.back() != '}') fail(text, "missing closing '}'");
    name = trim(text.substr(0, brace));
    body = text.substr(brace + 1, text.size() - brace - 2);
    if (body.find('{') != std::string::npos || body.find('}') != std::string::npos) fail(text, "nested braces");
  }
  const auto args = parse_args(text, body);

  if (name == "identity" || name == "bump" || name == "divergent") {
    if (!args.empty()) fail(text, "'" + name + "' takes no arguments");
    if (name == "identity") return identity_symbol(dims);
    if (name == "bump") return bump_symbol(dims);
    return divergent_symbol(dims);
  }
  if (name == "heat") {
    expect_keys(text, args, {"t"});
    const double t = to_number(text, "t", args.at("t"));
    if (!(t > 0.0)) fail(text, "t must be positive");
    return heat_symbol(dims, t);
  }
  if (name == "oscillatory") {
    expect_keys(text, args, {"k"});
    return oscillatory_symbol(dims, to_number(text, "k", args.at("k")));
  }
  if (name == "laplace_type") {
    expect_keys(text, args, {"phi"});
    const std::string phi = args.at("phi");
    if (phi == "const") return laplace_type_const(dims);
    const std::string prefix = "imag_power:";
    if (phi.rfind(prefix, 0) == 0) {
      const auto inner = parse_args(text, phi.substr(prefix.size()));
      expect_keys(text, inner, {"gamma"});
      return laplace_type_imag_power(dims, to_number(text, "gamma", inner.at("gamma")));
    }
    fail(text, "unknown phi '" + phi + "' (const, imag_power:gamma=G)");
  }
  if (name == "potential") {
    expect_keys(text, args, {"s", "h"});
    const double s = to_number(text, "s", args.at("s"));
    if (!(s > 0.0)) fail(text, "s must be positive");
    try {
      return PotentialFamily(args.at("h"), s, dims).symbol();
    } catch (const std::invalid_argument& e) {
      fail(text, e.what());
    }
  }
  fail(text, "unknown symbol family '" + name + "'");
}

}  // namespace hml
