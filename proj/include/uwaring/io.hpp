#pragma once

// Text formats: problem files (JSON), target matrices (JSON), and word files
// (line-oriented, single-space separated, LF-terminated).

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uwaring/errors.hpp"
#include "uwaring/group_spec.hpp"
#include "uwaring/matrix.hpp"
#include "uwaring/morphism.hpp"
#include "uwaring/word.hpp"

namespace uwaring {

struct ProblemFile {
  RingTag ring = RingTag::Q;
  std::size_t k = 0;
  std::optional<std::vector<ScalarMatrix>> lie_basis;  // absent: full n_k
  std::vector<PolyMatrix> morphisms;
};

namespace detail {

using json = nlohmann::json;

inline std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(what + ": syntax error at " + line_col(text, byte));
  }
}

inline Scalar scalar_at(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) throw ParseError(path + ": expected a scalar string");
  std::string why;
  auto s = parse_scalar(j.get<std::string>(), &why);
  if (!s) throw ParseError(path + ": invalid scalar '" + j.get<std::string>() + "' (" + why + ")");
  return *s;
}

inline const json& array_at(const json& j, const std::string& path, std::optional<std::size_t> len = {}) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  if (len && j.size() != *len)
    throw ParseError(path + ": expected " + std::to_string(*len) + " entries, found " + std::to_string(j.size()));
  return j;
}

inline ScalarMatrix scalar_matrix_at(const json& j, std::size_t k, const std::string& path) {
  array_at(j, path, k);
  ScalarMatrix m(k);
  for (std::size_t r = 0; r < k; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    array_at(j[r], rp, k);
    for (std::size_t c = 0; c < k; ++c) m(r, c) = scalar_at(j[r][c], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

inline Poly poly_at(const json& j, const std::string& path) {
  if (j.is_string() || j.is_number_integer()) return Poly(scalar_at(j, path));
  array_at(j, path);
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(scalar_at(j[i], path + "[" + std::to_string(i) + "]"));
  return Poly(std::move(c));
}

inline json scalar_json(const Scalar& s) { return s.str(); }

inline json poly_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coefficients()) a.push_back(scalar_json(c));
  return a;
}

template <class T, class F>
json matrix_json(const Matrix<T>& m, F&& entry) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(entry(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline ProblemFile parse_problem(std::string_view text) {
  using detail::json;
  json doc = detail::parse_json(text, "problem file");
  if (!doc.is_object()) throw ParseError("problem file: top level must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "ring" && it.key() != "k" && it.key() != "lie_basis" && it.key() != "morphisms")
      throw ParseError("problem file: unknown key '" + it.key() + "'");
  ProblemFile pf;
  if (!doc.contains("ring") || !doc["ring"].is_string()) throw ParseError("ring: expected one of Q, QI, Z, ZI");
  auto ring = parse_ring_tag(doc["ring"].get<std::string>());
  if (!ring) throw ParseError("ring: unknown ring '" + doc["ring"].get<std::string>() + "'");
  pf.ring = *ring;
  if (!doc.contains("k") || !doc["k"].is_number_unsigned() || doc["k"].get<std::size_t>() == 0)
    throw ParseError("k: expected a positive integer");
  pf.k = doc["k"].get<std::size_t>();
  if (doc.contains("lie_basis")) {
    const auto& lb = detail::array_at(doc["lie_basis"], "lie_basis");
    std::vector<ScalarMatrix> basis;
    for (std::size_t b = 0; b < lb.size(); ++b)
      basis.push_back(detail::scalar_matrix_at(lb[b], pf.k, "lie_basis[" + std::to_string(b) + "]"));
    pf.lie_basis = std::move(basis);
  }
  if (!doc.contains("morphisms")) throw ParseError("morphisms: missing");
  const auto& ms = detail::array_at(doc["morphisms"], "morphisms");
  for (std::size_t f = 0; f < ms.size(); ++f) {
    const std::string path = "morphisms[" + std::to_string(f) + "]";
    detail::array_at(ms[f], path, pf.k);
    PolyMatrix m(pf.k);
    for (std::size_t r = 0; r < pf.k; ++r) {
      const std::string rp = path + "[" + std::to_string(r) + "]";
      detail::array_at(ms[f][r], rp, pf.k);
      for (std::size_t c = 0; c < pf.k; ++c)
        m(r, c) = detail::poly_at(ms[f][r][c], rp + "[" + std::to_string(c) + "]");
    }
    pf.morphisms.push_back(std::move(m));
  }
  return pf;
}

// Canonical text: keys sorted, scalars reduced, polynomials as coefficient
// lists (constant first, zero polynomial = []), one matrix per line.
inline std::string print_problem(const ProblemFile& pf) {
  using detail::json;
  std::string s = "{\n";
  s += "  \"k\": " + std::to_string(pf.k) + ",\n";
  auto block = [&](const char* key, const std::vector<json>& items) {
    s += "  \"" + std::string(key) + "\": [";
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ",\n    " : "\n    ") + items[i].dump();
    s += items.empty() ? "],\n" : "\n  ],\n";
  };
  if (pf.lie_basis) {
    std::vector<json> items;
    for (const auto& b : *pf.lie_basis) items.push_back(detail::matrix_json(b, detail::scalar_json));
    block("lie_basis", items);
  }
  std::vector<json> items;
  for (const auto& m : pf.morphisms) items.push_back(detail::matrix_json(m, detail::poly_json));
  block("morphisms", items);
  s += "  \"ring\": \"" + std::string(to_string(pf.ring)) + "\"\n}\n";
  return s;
}

// FNV-1a over the canonical text, as 16 hex digits.
inline std::string family_hash(const ProblemFile& pf) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : print_problem(pf)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline GroupSpecPtr build_spec(const ProblemFile& pf) {
  if (!pf.lie_basis) return std::make_shared<const GroupSpec>(GroupSpec::full_unitriangular(pf.k, pf.ring));
  std::vector<NilMatrix> basis;
  for (const auto& b : *pf.lie_basis) basis.emplace_back(b);
  return std::make_shared<const GroupSpec>(pf.k, pf.ring, std::move(basis));
}

inline void check_ring_membership(const Scalar& s, RingTag ring, const std::string& where) {
  if (!is_gaussian_ring(ring) && !s.is_real())
    throw InvalidInput(where + ": " + s.str() + " is not in " + to_string(ring));
  if (is_integral_ring(ring) && !s.is_integral())
    throw InvalidInput(where + ": " + s.str() + " is not in " + to_string(ring));
}

// Morphism coefficients must lie in the fraction field of the ring tag.
inline MorphismFamily build_family(const ProblemFile& pf, const GroupSpecPtr& spec) {
  std::vector<PolyMorphism> ms;
  for (std::size_t f = 0; f < pf.morphisms.size(); ++f) {
    const auto& m = pf.morphisms[f];
    for (const auto& p : m.entries())
      for (const auto& c : p.coefficients())
        check_ring_membership(c, fraction_field(pf.ring), "morphisms[" + std::to_string(f) + "]");
    try {
      ms.push_back(validate_morphism(m, spec));
    } catch (const Error& e) {
      throw InvalidInput("morphisms[" + std::to_string(f) + "]: " + e.what());
    }
  }
  return MorphismFamily(spec, std::move(ms));
}

inline UniMatrix parse_target(std::string_view text, std::size_t k) {
  detail::json doc = detail::parse_json(text, "target file");
  if (doc.is_object() && doc.contains("target")) doc = doc["target"];
  ScalarMatrix m = detail::scalar_matrix_at(doc, k, "target");
  return UniMatrix(std::move(m));
}

inline std::string print_target(const UniMatrix& g) {
  return detail::matrix_json(g.matrix(), detail::scalar_json).dump() + "\n";
}

struct WordFile {
  RingTag ring = RingTag::Q;
  std::size_t k = 0;
  std::string family;
  Word word;
  ScalarMatrix target;
  std::optional<std::string> bound;
};

// waring-word 1
// ring <tag>
// k <k>
// family <hash>
// <j> <x> <+1|-1>      one line per factor, j is 1-based
// target <k*k entries row-major>
// bound <B>            optional
// length <L>
inline std::string print_word_file(const WordFile& wf) {
  std::string s = "waring-word 1\n";
  s += "ring " + std::string(to_string(wf.ring)) + "\n";
  s += "k " + std::to_string(wf.k) + "\n";
  s += "family " + wf.family + "\n";
  for (const auto& f : wf.word.factors())
    s += std::to_string(f.index + 1) + " " + f.arg.str() + " " + (f.exponent > 0 ? "+1" : "-1") + "\n";
  s += "target";
  for (const auto& v : wf.target.entries()) s += " " + v.str();
  s += "\n";
  if (wf.bound) s += "bound " + *wf.bound + "\n";
  s += "length " + std::to_string(wf.word.length()) + "\n";
  return s;
}

inline WordFile parse_word_file(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) throw ParseError("word file: last line is not LF-terminated");
      lines.emplace_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }
  auto fail = [](std::size_t line, const std::string& why) -> ParseError {
    return ParseError("word file line " + std::to_string(line + 1) + ": " + why);
  };
  auto split = [](const std::string& l) {
    std::vector<std::string> f;
    std::size_t p = 0;
    while (true) {
      std::size_t sp = l.find(' ', p);
      f.push_back(l.substr(p, sp - p));
      if (sp == std::string::npos) break;
      p = sp + 1;
    }
    return f;
  };
  if (lines.size() < 6) throw ParseError("word file: too short");
  if (lines[0] != "waring-word 1") throw fail(0, "bad header");
  WordFile wf;
  auto f1 = split(lines[1]);
  if (f1.size() != 2 || f1[0] != "ring" || !parse_ring_tag(f1[1])) throw fail(1, "expected 'ring <tag>'");
  wf.ring = *parse_ring_tag(f1[1]);
  auto f2 = split(lines[2]);
  if (f2.size() != 2 || f2[0] != "k") throw fail(2, "expected 'k <n>'");
  try {
    wf.k = std::stoul(f2[1]);
  } catch (...) {
    throw fail(2, "bad k");
  }
  if (wf.k == 0 || std::to_string(wf.k) != f2[1]) throw fail(2, "bad k");
  auto f3 = split(lines[3]);
  if (f3.size() != 2 || f3[0] != "family") throw fail(3, "expected 'family <hash>'");
  wf.family = f3[1];
  std::size_t i = 4;
  for (; i < lines.size() && lines[i].rfind("target", 0) != 0; ++i) {
    auto f = split(lines[i]);
    if (f.size() != 3) throw fail(i, "expected '<j> <x> <e>'");
    std::size_t j = 0;
    try {
      j = std::stoul(f[0]);
    } catch (...) {
      throw fail(i, "bad morphism index");
    }
    if (j == 0 || std::to_string(j) != f[0]) throw fail(i, "bad morphism index");
    std::string why;
    auto x = parse_scalar(f[1], &why);
    if (!x || x->str() != f[1]) throw fail(i, "argument '" + f[1] + "' is not a canonical scalar");
    if (f[2] != "+1" && f[2] != "-1") throw fail(i, "exponent must be +1 or -1");
    wf.word.push({j - 1, *x, f[2] == "+1" ? 1 : -1});
  }
  if (i >= lines.size()) throw ParseError("word file: missing target line");
  auto ft = split(lines[i]);
  if (ft.size() != wf.k * wf.k + 1) throw fail(i, "target needs k*k entries");
  wf.target = ScalarMatrix(wf.k);
  for (std::size_t e = 0; e < wf.k * wf.k; ++e) {
    auto v = parse_scalar(ft[e + 1]);
    if (!v) throw fail(i, "bad target entry '" + ft[e + 1] + "'");
    wf.target(e / wf.k, e % wf.k) = *v;
  }
  ++i;
  if (i < lines.size() && lines[i].rfind("bound ", 0) == 0) {
    wf.bound = lines[i].substr(6);
    ++i;
  }
  if (i + 1 != lines.size()) throw ParseError("word file: expected a final 'length' line");
  if (lines[i] != "length " + std::to_string(wf.word.length())) throw fail(i, "length does not match the factor count");
  return wf;
}

}  // namespace uwaring
