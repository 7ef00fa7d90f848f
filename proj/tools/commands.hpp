#pragma once

// uwaring command-line driver. Exit codes: 0 success, 1 negative decision,
// 2 input error, 3 obstruction.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uwaring/io.hpp"
#include "uwaring/uwaring.hpp"

namespace uwaring::cli {

enum Exit : int { kOk = 0, kNegative = 1, kInputError = 2, kObstruction = 3 };

using json = nlohmann::json;

inline int log_level() {
  const char* v = std::getenv("WARING_LOG");
  if (!v || !*v) return 0;
  std::string s(v);
  if (s == "debug") return 2;
  if (s == "info") return 1;
  try {
    return std::stoi(s);
  } catch (...) {
    return 1;
  }
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  int verbosity = log_level();

  void log(int level, const std::string& msg) const {
    if (verbosity >= level) err << "[uwaring] " << msg << "\n";
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  ProblemFile problem;
  GroupSpecPtr spec;
  std::optional<MorphismFamily> family;
};

inline Loaded load_problem(const std::string& path, const std::string& ring_override) {
  Loaded l;
  try {
    l.problem = parse_problem(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!ring_override.empty()) {
    auto r = parse_ring_tag(ring_override);
    if (!r) throw InvalidInput("--ring: unknown ring '" + ring_override + "'");
    l.problem.ring = *r;
  }
  l.spec = build_spec(l.problem);
  l.family.emplace(build_family(l.problem, l.spec));
  return l;
}

inline json vec_json(const Vec<Scalar>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(s.str());
  return a;
}

inline std::string ring_vec_str(const RingVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

inline int cmd_check_generating(const Context& cx, const std::string& path, const std::string& ring, bool as_json) {
  Loaded l = load_problem(path, ring);
  if (l.spec->derived_length() == 0) {
    if (as_json)
      cx.out << json{{"generating", true}, {"quotient_dim", 0}, {"rank", 0}, {"witness", nullptr}}.dump() << "\n";
    else
      cx.out << "GENERATING\nrank 0 of 0\n";
    return kOk;
  }
  AbelianizedFamily ab = abelianize(*l.family);
  GeneratingReport rep = is_generating(ab);
  cx.log(1, "abelianized: " + std::to_string(ab.n) + " morphisms, degree " + std::to_string(ab.d) +
                ", quotient dim " + std::to_string(ab.m));
  if (as_json) {
    cx.out << json{{"generating", rep.generating},
                   {"quotient_dim", rep.m},
                   {"rank", rep.rank},
                   {"witness", rep.generating ? json(nullptr) : vec_json(rep.witness)}}
                  .dump()
           << "\n";
  } else {
    cx.out << (rep.generating ? "GENERATING\n" : "NOT-GENERATING\n");
    cx.out << "rank " << rep.rank << " of " << rep.m << "\n";
    if (!rep.generating) cx.out << "witness " << vec_str(rep.witness) << "\n";
  }
  return rep.generating ? kOk : kNegative;
}

inline int cmd_decompose(const Context& cx, const std::string& path, const std::string& target_path,
                         const std::string& ring, std::size_t gamma_cap, bool verify, bool as_json) {
  Loaded l = load_problem(path, ring);
  UniMatrix target = parse_target(read_file(target_path), l.spec->k());
  Mode mode = is_integral_ring(l.problem.ring) ? Mode::Integral : Mode::Field;
  Decomposer dec(*l.family, mode, {gamma_cap});
  for (const auto& s : dec.shapes())
    cx.log(1, "stage: n=" + std::to_string(s.morphisms) + " d=" + std::to_string(s.degree) +
                  " T=" + std::to_string(s.template_length));
  Decomposition d = dec.decompose(target);
  WordFile wf;
  wf.ring = l.problem.ring;
  wf.k = l.spec->k();
  wf.family = family_hash(l.problem);
  wf.word = d.word;
  wf.target = target.matrix();
  wf.bound = d.bound.get_str();
  if (as_json) {
    json factors = json::array();
    for (const auto& f : d.word.factors()) factors.push_back({f.index + 1, f.arg.str(), f.exponent});
    cx.out << json{{"family", wf.family},
                   {"ring", to_string(wf.ring)},
                   {"k", wf.k},
                   {"factors", factors},
                   {"length", d.word.length()},
                   {"bound", wf.bound.value()}}
                  .dump()
           << "\n";
  } else {
    cx.out << print_word_file(wf);
  }
  if (verify) {
    // re-read the emitted text and evaluate it from scratch
    WordFile back = parse_word_file(print_word_file(wf));
    if (eval_word(back.word, *l.family).matrix() != back.target) {
      cx.err << "verification FAILED\n";
      return kObstruction;
    }
    cx.err << "CHECKED\n";
  }
  return kOk;
}

inline int cmd_verify_word(const Context& cx, const std::string& path, const std::string& word_path,
                           const std::string& ring, bool as_json) {
  Loaded l = load_problem(path, ring);
  WordFile wf = parse_word_file(read_file(word_path));
  std::string why;
  if (wf.k != l.spec->k()) why = "k does not match the problem";
  else if (wf.ring != l.problem.ring) why = "ring does not match the problem";
  else if (wf.family != family_hash(l.problem)) why = "family hash does not match the problem";
  if (why.empty()) {
    for (const auto& f : wf.word.factors())
      if (f.index >= l.family->size()) throw IndexOutOfRange(f.index, l.family->size());
    if (eval_word(wf.word, *l.family).matrix() != wf.target) why = "word does not evaluate to the target";
  }
  if (as_json)
    cx.out << json{{"checked", why.empty()}, {"length", wf.word.length()}, {"reason", why}}.dump() << "\n";
  else if (why.empty())
    cx.out << "CHECKED\nlength " << wf.word.length() << "\n";
  else
    cx.out << "MISMATCH\n" << why << "\n";
  return why.empty() ? kOk : kNegative;
}

inline json certificate_json(const IndexCertificate& c) {
  json levels = json::array();
  for (const auto& lv : c.levels) {
    json divisors = json::array(), basis = json::array();
    for (const auto& d : lv.divisors) divisors.push_back(d.get_str());
    for (const auto& b : lv.sublattice.basis()) {
      json row = json::array();
      for (const auto& e : b) row.push_back(e.str());
      basis.push_back(row);
    }
    levels.push_back({{"level", lv.level},
                      {"quotient_dim", lv.quotient_dim},
                      {"divisors", divisors},
                      {"basis", basis},
                      {"index", lv.index.get_str()},
                      {"hirsch", lv.hirsch}});
  }
  return {{"ring", to_string(c.ring)},
          {"group_dim", c.group_dim},
          {"levels", levels},
          {"total_index", c.total_index.get_str()},
          {"total_hirsch", c.total_hirsch},
          {"expected_hirsch", c.expected_hirsch()},
          {"finite_index", c.finite_index()}};
}

inline int cmd_certify(const Context& cx, const std::string& path, const std::string& ring, std::size_t gamma_cap,
                       bool as_json) {
  Loaded l = load_problem(path, ring);
  IndexCertificate c = subgroup_certificate(*l.family, {gamma_cap});
  json j = certificate_json(c);
  if (as_json) {
    cx.out << j.dump() << "\n";
    return kOk;
  }
  cx.out << "CERTIFICATE ring " << to_string(c.ring) << " dim " << c.group_dim << "\n";
  for (const auto& lv : c.levels) {
    cx.out << "level " << lv.level << " quotient-dim " << lv.quotient_dim << " index " << lv.index.get_str()
           << " hirsch " << lv.hirsch << "\n";
    for (const auto& b : lv.sublattice.basis()) cx.out << "  basis " << ring_vec_str(b) << "\n";
  }
  cx.out << "total-index " << c.total_index.get_str() << "\n";
  cx.out << "total-hirsch " << c.total_hirsch << " of " << c.expected_hirsch() << "\n";
  cx.out << (c.finite_index() ? "FINITE-INDEX\n" : "INFINITE-INDEX\n");
  cx.out << "BEGIN-JSON\n" << j.dump() << "\nEND-JSON\n";
  return kOk;
}

inline int cmd_oracle(const Context& cx, const std::string& path, const std::string& ring, std::uint32_t prime,
                      std::size_t max_len, std::uint64_t cap, bool as_json) {
  Loaded l = load_problem(path, ring);
  FiniteQuotientFamily q = reduce_mod_p(*l.family, prime);
  CoverageProfile prof = coverage_bfs(q, max_len, cap);
  if (as_json) {
    json j{{"prime", prime},
           {"group_order", std::to_string(prof.group_order)},
           {"counts", prof.counts},
           {"closure_order", std::to_string(prof.closure_order)},
           {"closure", prof.full() ? "FULL" : "PROPER"}};
    if (q.root_of_minus_one) j["i"] = *q.root_of_minus_one;
    cx.out << j.dump() << "\n";
  } else {
    cx.out << "ORACLE p " << prime << " group-order " << prof.group_order << "\n";
    if (q.root_of_minus_one) cx.out << "i -> " << *q.root_of_minus_one << "\n";
    cx.out << "len count\n";
    for (std::size_t i = 0; i < prof.counts.size(); ++i) cx.out << i << " " << prof.counts[i] << "\n";
    cx.out << "closure " << prof.closure_order << "\n";
    cx.out << "CLOSURE=" << (prof.full() ? "FULL" : "PROPER") << "\n";
  }
  return prof.full() ? kOk : kNegative;
}

// Maps library errors to exit codes; messages go to stderr.
template <class F>
int guarded(const Context& cx, F&& body) {
  try {
    return body();
  } catch (const NotGenerating& e) {
    cx.err << "NOT-GENERATING: " << e.what() << "\n";
    return kNegative;
  } catch (const NotInCertifiedSubgroup& e) {
    cx.err << "NOT-IN-CERTIFIED-SUBGROUP: " << e.what() << "\n";
    return kObstruction;
  } catch (const RankDeficient& e) {
    cx.err << "RANK-DEFICIENT: " << e.what() << "\n";
    return kObstruction;
  } catch (const DescentStalled& e) {
    cx.err << "DESCENT-STALLED: " << e.what() << "\n";
    return kObstruction;
  } catch (const Error& e) {
    cx.err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context cx{out, err};
  CLI::App app{"Easier Waring problem for unipotent groups: generation, words, certificates"};
  app.require_subcommand(1);
  std::string problem, target, word, ring;
  bool as_json = false, verify = false;
  std::size_t gamma_cap = 8, max_len = 8;
  std::uint32_t prime = 0;
  std::uint64_t cap = 1000000;

  auto common = [&](CLI::App* sub) {
    sub->add_option("problem", problem, "problem file (JSON)")->required();
    sub->add_option("--ring,--ring-mode", ring, "override the ring tag")
        ->check(CLI::IsMember({"Q", "QI", "Z", "ZI"}));
    sub->add_flag("--json", as_json, "machine-readable output");
  };
  auto* gen = app.add_subcommand("check-generating", "test the abelianized rank condition");
  common(gen);
  auto* dec = app.add_subcommand("decompose", "write a target as a signed word");
  common(dec);
  dec->add_option("target", target, "target matrix (JSON rows)")->required();
  dec->add_flag("--verify", verify, "re-evaluate the emitted word");
  dec->add_option("--gamma-cap", gamma_cap, "descent multiplier cap")->check(CLI::PositiveNumber);
  auto* cert = app.add_subcommand("certify", "finite-index certificate over Z or Z[i]");
  common(cert);
  cert->add_option("--gamma-cap", gamma_cap, "descent multiplier cap")->check(CLI::PositiveNumber);
  auto* orc = app.add_subcommand("oracle", "brute-force coverage modulo a prime");
  common(orc);
  orc->add_option("--prime", prime, "prime modulus")->required();
  orc->add_option("--max-len", max_len, "longest word length in the table");
  orc->add_option("--cap", cap, "largest group order to enumerate");
  auto* vw = app.add_subcommand("verify-word", "re-evaluate a word file");
  common(vw);
  vw->add_option("word", word, "word file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  return guarded(cx, [&]() -> int {
    if (*gen) return cmd_check_generating(cx, problem, ring, as_json);
    if (*dec) return cmd_decompose(cx, problem, target, ring, gamma_cap, verify, as_json);
    if (*cert) return cmd_certify(cx, problem, ring, gamma_cap, as_json);
    if (*orc) return cmd_oracle(cx, problem, ring, prime, max_len, cap, as_json);
    return cmd_verify_word(cx, problem, word, ring, as_json);
  });
}

}  // namespace uwaring::cli
