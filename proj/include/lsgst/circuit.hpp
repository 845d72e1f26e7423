#ifndef LSGST_CIRCUIT_HPP
#define LSGST_CIRCUIT_HPP

#include <cctype>
#include <string>
#include <vector>

#include "lsgst/common.hpp"

namespace lsgst {

// fiducial-sandwiched germ-power circuit: prep | germ^p | meas
struct Circuit {
  std::vector<std::string> prep;
  std::vector<std::string> germ;
  int power = 1;
  std::vector<std::string> meas;

  bool operator==(const Circuit&) const = default;
};

namespace detail {

inline bool valid_gate_token(const std::string& t) {
  if (t == "LS") return true;
  if (t.size() != 5 || t[3] != ':') return false;
  const std::string name = t.substr(0, 3);
  const char q = t[4];
  if (q != '0' && q != '1') return false;
  return name == "XPI" || name == "XP2" || name == "XM2" || name == "YP2" || name == "YM2";
}

struct Token {
  std::string text;
  std::size_t offset;
};

inline std::vector<Token> lex_circuit(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] == '|' || s[i] == '^') {
      out.push_back({std::string(1, s[i]), i});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '|' &&
           s[j] != '^')
      ++j;
    out.push_back({s.substr(i, j - i), i});
    i = j;
  }
  return out;
}

}  // namespace detail

// Grammar: prep "|" germ "^" INT "|" meas, whitespace-insensitive.
// Gate tokens are LS or {XPI,XP2,XM2,YP2,YM2}:{0|1}; a lone I denotes an
// empty fiducial.
inline Circuit parse_circuit(const std::string& text) {
  const auto tokens = detail::lex_circuit(text);
  std::size_t i = 0;
  auto offset_at = [&](std::size_t k) {
    return k < tokens.size() ? tokens[k].offset : text.size();
  };

  auto read_fiducial = [&](std::vector<std::string>& out) {
    std::vector<std::string> got;
    while (i < tokens.size() && tokens[i].text != "|" && tokens[i].text != "^") {
      got.push_back(tokens[i].text);
      ++i;
    }
    if (got.empty()) throw parse_error("empty fiducial", offset_at(i));
    if (got.size() == 1 && got[0] == "I") return;  // explicit empty fiducial
    for (std::size_t k = 0; k < got.size(); ++k)
      if (!detail::valid_gate_token(got[k]))
        throw parse_error("unknown token '" + got[k] + "'", offset_at(i - got.size() + k));
    out = std::move(got);
  };

  Circuit c;
  read_fiducial(c.prep);
  if (i >= tokens.size() || tokens[i].text != "|")
    throw parse_error("expected '|'", offset_at(i));
  ++i;

  while (i < tokens.size() && tokens[i].text != "^") {
    if (tokens[i].text == "|") throw parse_error("expected '^' before '|'", tokens[i].offset);
    if (!detail::valid_gate_token(tokens[i].text))
      throw parse_error("unknown token '" + tokens[i].text + "'", tokens[i].offset);
    c.germ.push_back(tokens[i].text);
    ++i;
  }
  if (c.germ.empty()) throw parse_error("empty germ", offset_at(i));
  if (i >= tokens.size()) throw parse_error("expected '^'", offset_at(i));
  ++i;  // consume '^'
  if (i >= tokens.size()) throw parse_error("expected germ power", offset_at(i));
  {
    const std::string& num = tokens[i].text;
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
      throw parse_error("malformed power '" + num + "'", tokens[i].offset);
    c.power = std::stoi(num);
    ++i;
  }
  if (i >= tokens.size() || tokens[i].text != "|")
    throw parse_error("expected '|'", offset_at(i));
  ++i;
  read_fiducial(c.meas);
  if (i < tokens.size()) throw parse_error("trailing garbage", tokens[i].offset);
  return c;
}

inline std::string serialize_circuit(const Circuit& c) {
  auto join = [](const std::vector<std::string>& v) {
    if (v.empty()) return std::string("I");
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) out += ' ';
      out += v[k];
    }
    return out;
  };
  return join(c.prep) + " | " + join(c.germ) + "^" + std::to_string(c.power) + " | " +
         join(c.meas);
}

}  // namespace lsgst

#endif
