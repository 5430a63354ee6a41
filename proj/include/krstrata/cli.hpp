#pragma once

// Batch command-line frontend. Output is deterministic: JSON objects have sorted keys, rows
// follow the lexicographic order of the underlying index sets.
//
// Exit codes: 0 success, 2 usage / malformed input, 3 window or size limit, 4 internal
// cross-check failure.

#include <cctype>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "krstrata/alcove_perm.hpp"
#include "krstrata/coxeter_bruhat.hpp"
#include "krstrata/errors.hpp"
#include "krstrata/prank.hpp"
#include "krstrata/strata_reports.hpp"
#include "krstrata/weyl_core.hpp"

#ifndef KRSTRATA_VERSION
#define KRSTRATA_VERSION "0.1.0"
#endif

namespace krs::cli {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitWindow = 3;
inline constexpr int kExitInvariant = 4;

/// Upper bound on the number of f-tuples a table command will materialise.
inline constexpr long long kMaxRows = 1'000'000;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct OutputEnvelope {
  std::string command;
  json parameters = json::object();
  json rows = json::array();

  json to_json() const {
    return json{{"command", command}, {"engine_version", KRSTRATA_VERSION}, {"parameters", parameters}, {"rows", rows}};
  }
};

// ---------------------------------------------------------------------------------------------
// Tuple syntax: "w=[2,1];l=[1,0]" per component, components joined by ';'.

namespace detail {

inline std::string strip(const std::string& s) {
  std::size_t lo = 0, hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return s.substr(lo, hi - lo);
}

inline std::vector<int> parse_int_list(const std::string& text) {
  const std::string body = strip(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw UsageError("expected a bracketed list, got '" + text + "'");
  }
  std::vector<int> out;
  std::stringstream ss(body.substr(1, body.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip(item);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw UsageError("not an integer: '" + item + "'");
    out.push_back(value);
  }
  return out;
}

}  // namespace detail

inline FrobeniusTuple parse_tuple(const std::string& text) {
  std::vector<std::string> fields;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ';')) {
    field = detail::strip(field);
    if (!field.empty()) fields.push_back(field);
  }
  if (fields.empty() || fields.size() % 2 != 0) {
    throw UsageError("tuple must consist of w=[...];l=[...] pairs");
  }
  std::vector<ExtAffineElement> components;
  for (std::size_t k = 0; k < fields.size(); k += 2) {
    if (fields[k].rfind("w=", 0) != 0 || fields[k + 1].rfind("l=", 0) != 0) {
      throw UsageError("expected 'w=' followed by 'l=' in component " + std::to_string(k / 2));
    }
    const auto w = detail::parse_int_list(fields[k].substr(2));
    const auto l = detail::parse_int_list(fields[k + 1].substr(2));
    if (w.size() != l.size()) throw UsageError("w and l lengths differ in component " + std::to_string(k / 2));
    try {
      components.emplace_back(Permutation(w), IntVector(l));
    } catch (const Error& err) {
      throw UsageError(err.what());
    }
  }
  try {
    return FrobeniusTuple(std::move(components));
  } catch (const Error& err) {
    throw UsageError(err.what());
  }
}

inline json element_json(const ExtAffineElement& x) { return json{{"w", x.w.images()}, {"l", x.lambda.values()}}; }

inline json tuple_json(const FrobeniusTuple& t) {
  json out = json::array();
  for (const auto& x : t) out.push_back(element_json(x));
  return out;
}

inline std::string tuple_compact(const FrobeniusTuple& t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

inline std::string rational_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

// ---------------------------------------------------------------------------------------------
// Shared option handling

struct StrataOptions {
  std::string flavor = "gsp";
  std::string unitary = "split";
  int e = 1;
  int n = 1;
  int f = 1;
  int r = -1;
  std::string format = "json";
};

inline PermDatum datum_of(const StrataOptions& o) {
  if (o.e < 1 || o.n < 1 || o.f < 1) throw UsageError("--e, --n and --f must be at least 1");
  if (o.flavor == "gsp") return PermDatum::symplectic(o.n, o.e);
  if (o.flavor == "gu") return PermDatum::unitary_ramified(o.n, o.e);
  if (o.r < 0) throw UsageError("--r is required for --flavor gl");
  if (o.r > o.n * o.e) throw UsageError("--r must satisfy 0 <= r <= n*e");
  return PermDatum::general_linear(o.n, o.e, o.r);
}

inline StrataConfig config_of(const StrataOptions& o) {
  if (o.flavor == "gsp") return StrataConfig::symplectic(o.e, o.f, o.n);
  if (o.flavor == "gu") return StrataConfig::unitary_ramified(o.e, o.f, o.n);
  if (o.unitary == "inert") {
    StrataConfig cfg = StrataConfig::unitary_inert(o.e, o.f, o.n);
    cfg.r = o.r;
    return cfg;
  }
  return StrataConfig::unitary_split(o.e, o.f, o.n, o.r);
}

inline json strata_parameters(const StrataOptions& o, bool with_unitary) {
  json p{{"flavor", o.flavor}, {"e", o.e}, {"n", o.n}, {"f", o.f}};
  if (o.flavor == "gl") {
    p["r"] = o.r;
    if (with_unitary) p["unitary"] = o.unitary;
  }
  return p;
}

inline std::vector<FrobeniusTuple> strata_index(const StrataOptions& o, const Limits& limits) {
  const auto perm = enumerate_perm(datum_of(o), limits);
  long double rows = 1;
  for (int k = 0; k < o.f; ++k) rows *= static_cast<long double>(perm.size());
  if (rows > kMaxRows) {
    throw WindowExceeded("index set has more than " + std::to_string(kMaxRows) + " tuples");
  }
  return product_tuples(perm, o.f);
}

inline bool has_bruhat(const StrataOptions& o) { return o.flavor != "gu"; }

inline void add_strata_options(CLI::App* sub, StrataOptions& o, bool with_unitary) {
  sub->add_option("--flavor", o.flavor, "gsp, gu (ramified unitary) or gl")
      ->check(CLI::IsMember({"gsp", "gu", "gl"}));
  sub->add_option("--e", o.e, "ramification index (e_0 for gu)");
  sub->add_option("--n", o.n, "rank parameter n");
  sub->add_option("--f", o.f, "length of the Frobenius orbit (f, or f_0 for gl)");
  sub->add_option("--r", o.r, "signature r for gl (r-permissibility)");
  if (with_unitary) {
    sub->add_option("--unitary", o.unitary, "p-rank formula for gl: inert or split")
        ->check(CLI::IsMember({"inert", "split"}));
  }
}

// ---------------------------------------------------------------------------------------------
// Commands

inline void cmd_enum_perm(const StrataOptions& o, const Limits& limits, std::ostream& out) {
  const PermDatum d = datum_of(o);
  const auto tuples = strata_index(o, limits);
  std::optional<PositiveRootSystem> roots;
  if (has_bruhat(o)) roots = positive_roots(d.flavor);

  OutputEnvelope env{"enum-perm", strata_parameters(o, false)};
  std::ostringstream csv;
  csv << "index,components,length,oracle_agrees\n";
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    const auto& t = tuples[k];
    bool agrees = true;
    for (const auto& x : t) agrees = agrees && is_permissible_oracle(x, d) == is_permissible(x, d);
    if (!agrees) throw InvariantFailure("lattice oracle disagrees on " + tuple_compact(t));
    json row{{"index", k}, {"components", tuple_json(t)}, {"oracle_agrees", agrees}};
    row["length"] = roots ? json(length_im(t, *roots)) : json(nullptr);
    env.rows.push_back(row);
    csv << k << ',' << csv_quote(tuple_compact(t)) << ',' << (roots ? std::to_string(length_im(t, *roots)) : "")
        << ',' << (agrees ? "true" : "false") << '\n';
  }
  if (o.format == "csv") {
    out << csv.str();
  } else {
    out << env.to_json().dump(2) << '\n';
  }
}

inline std::vector<StratumRecord> strata_records(const StrataOptions& o, const Limits& limits) {
  const PermDatum d = datum_of(o);
  const StrataConfig cfg = config_of(o);
  const auto tuples = strata_index(o, limits);
  std::vector<StratumRecord> records;
  if (has_bruhat(o)) {
    const auto set = simple_reflections(d.flavor);
    const auto roots = positive_roots(d.flavor);
    // Maximal tuples of a product order are the products of maximal components.
    const auto perm = enumerate_perm(d, limits);
    const auto maxima = maximal_elements(perm, set);
    const std::set<ExtAffineElement> max_set(maxima.begin(), maxima.end());
    for (const auto& t : tuples) {
      const bool maximal = std::all_of(t.begin(), t.end(), [&](const auto& x) { return max_set.count(x) > 0; });
      records.push_back({t, prank(t, cfg), length_im(t, roots), maximal});
    }
  } else {
    for (const auto& t : tuples) records.push_back({t, prank(t, cfg), std::nullopt, false});
  }
  return records;
}

inline void cmd_prank_table(const StrataOptions& o, const Limits& limits, std::ostream& out) {
  const auto records = strata_records(o, limits);
  OutputEnvelope env{"prank-table", strata_parameters(o, true)};
  env.parameters["multiplier"] = config_of(o).multiplier();
  std::ostringstream csv;
  csv << "index,components,prank,length,is_maximal\n";
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& rec = records[k];
    json row{{"index", k}, {"components", tuple_json(rec.index)}, {"prank", rec.prank}};
    row["length"] = rec.length ? json(*rec.length) : json(nullptr);
    row["is_maximal"] = has_bruhat(o) ? json(rec.is_maximal) : json(nullptr);
    env.rows.push_back(row);
    csv << k << ',' << csv_quote(tuple_compact(rec.index)) << ',' << rec.prank << ','
        << (rec.length ? std::to_string(*rec.length) : "") << ','
        << (has_bruhat(o) ? (rec.is_maximal ? "true" : "false") : "") << '\n';
  }
  if (o.format == "csv") {
    out << csv.str();
  } else {
    out << env.to_json().dump(2) << '\n';
  }
}

inline void cmd_poset(const StrataOptions& o, const Limits& limits, std::ostream& out) {
  if (!has_bruhat(o)) throw UsageError("poset is only available for gsp and gl");
  const PermDatum d = datum_of(o);
  const auto set = simple_reflections(d.flavor);
  const auto roots = positive_roots(d.flavor);
  const auto records = strata_records(o, limits);
  std::vector<FrobeniusTuple> index;
  for (const auto& rec : records) index.push_back(rec.index);
  const auto edges = covering_relations(index, set, [&](const FrobeniusTuple& t) { return length_im(t, roots); });

  auto word_of = [&](const FrobeniusTuple& t) {
    std::string label;
    for (int k = 0; k < t.size(); ++k) {
      if (k) label += ", ";
      label += format_word(t[k], set);
    }
    return "(" + label + ")";
  };

  if (o.format == "dot") {
    out << "digraph bruhat {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t k = 0; k < records.size(); ++k) {
      out << "  n" << k << " [label=\"" << word_of(records[k].index) << "\\nlength " << *records[k].length
          << "\\nprank " << records[k].prank << "\"];\n";
    }
    for (auto [lo, hi] : edges) out << "  n" << lo << " -> n" << hi << ";\n";
    out << "}\n";
    return;
  }
  OutputEnvelope env{"poset", strata_parameters(o, true)};
  for (std::size_t k = 0; k < records.size(); ++k) {
    env.rows.push_back(json{{"node", k},
                            {"components", tuple_json(records[k].index)},
                            {"word", word_of(records[k].index)},
                            {"length", *records[k].length},
                            {"prank", records[k].prank}});
  }
  json edge_list = json::array();
  for (auto [lo, hi] : edges) edge_list.push_back(json::array({lo, hi}));
  json doc = env.to_json();
  doc["edges"] = edge_list;
  out << doc.dump(2) << '\n';
}

inline void cmd_density(int e, int f, int n, const std::string& format, const Limits& limits, std::ostream& out) {
  const DensityReport rep = ordinary_density(e, f, n, limits);
  if (rep.dense != (f == 1)) throw InvariantFailure("density verdict disagrees with the total-ramification criterion");
  if (format == "text") {
    out << "dense: " << (rep.dense ? "true" : "false") << '\n';
    return;
  }
  OutputEnvelope env{"density", json{{"e", e}, {"f", f}, {"n", n}}};
  json orbit = json::array();
  for (const auto& x : rep.orbit) orbit.push_back(element_json(x));
  env.rows.push_back(json{{"dense", rep.dense},
                          {"mu", rep.mu.values()},
                          {"translations", orbit},
                          {"maximal_tuples", rep.maximal_tuples},
                          {"diagonal_tuples", rep.diagonal_tuples}});
  out << env.to_json().dump(2) << '\n';
}

inline void cmd_prank0(int n, int r, const std::string& format, const Limits& limits, std::ostream& out) {
  const Prank0Report rep = prank0_dimension(n, r, limits);
  if (!rep.consistent()) throw InvariantFailure("p-rank 0 dimension disagrees with the closed form");
  if (format == "text") {
    out << rep.dimension << '\n';
    return;
  }
  OutputEnvelope env{"prank0", json{{"n", n}, {"r", r}}};
  env.rows.push_back(json{{"dimension", rep.dimension},
                          {"closed_form", rep.closed_form},
                          {"attaining", rep.attaining.images()},
                          {"witness", rep.witness.images()},
                          {"witness_N", rep.witness_N}});
  out << env.to_json().dump(2) << '\n';
}

inline void cmd_hb(int g, std::ostream& out) {
  const HbReport rep = hb_report(g);
  if (!rep.pranks_zero_or_g || rep.ordinary.size() != 2 || !rep.intersection_prank_zero || !rep.prank_zero_covered) {
    throw InvariantFailure("Hilbert-Blumenthal structure check failed");
  }
  OutputEnvelope env{"hb", json{{"g", g}}};
  json strata = json::array();
  for (const auto& rec : rep.strata) {
    strata.push_back(json{{"components", tuple_json(rec.index)},
                          {"prank", rec.prank},
                          {"length", *rec.length},
                          {"is_maximal", rec.is_maximal}});
  }
  auto tuples = [](const std::vector<FrobeniusTuple>& ts) {
    json a = json::array();
    for (const auto& t : ts) a.push_back(tuple_json(t));
    return a;
  };
  json histogram = json::object();
  for (auto [p, count] : rep.prank_histogram) histogram[std::to_string(p)] = count;
  env.rows.push_back(json{{"tau", element_json(rep.tau)},
                          {"s0_tau", element_json(rep.s0_tau)},
                          {"s1_tau", element_json(rep.s1_tau)},
                          {"strata", strata},
                          {"ordinary", tuples(rep.ordinary)},
                          {"maximal", tuples(rep.maximal)},
                          {"closure_intersection", tuples(rep.closure_intersection)},
                          {"prank_histogram", histogram},
                          {"pranks_zero_or_g", rep.pranks_zero_or_g},
                          {"intersection_prank_zero", rep.intersection_prank_zero},
                          {"prank_zero_covered", rep.prank_zero_covered}});
  out << env.to_json().dump(2) << '\n';
}

inline void cmd_newton(const std::string& tuple_text, std::ostream& out) {
  const FrobeniusTuple t = parse_tuple(tuple_text);
  NewtonResult res;
  try {
    res = newton_vector(t);
  } catch (const HypothesisViolation& err) {
    throw UsageError(err.what());
  }
  OutputEnvelope env{"newton", json{{"tuple", tuple_compact(t)}}};
  json nu = json::array();
  for (const auto& v : res.nu) {
    json entries = json::array();
    for (const auto& q : v) entries.push_back(rational_string(q));
    nu.push_back(entries);
  }
  env.rows.push_back(json{{"period", res.period}, {"nu", nu}, {"zero_multiplicity", res.zero_multiplicity}});
  out << env.to_json().dump(2) << '\n';
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kottwitz-Rapoport strata combinatorics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(KRSTRATA_VERSION));

  StrataOptions strata;
  auto* enum_cmd = app.add_subcommand("enum-perm", "list the KR index set (products of permissible elements)");
  add_strata_options(enum_cmd, strata, false);
  enum_cmd->add_option("--format", strata.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* table_cmd = app.add_subcommand("prank-table", "p-rank, length and maximality per stratum");
  add_strata_options(table_cmd, strata, true);
  table_cmd->add_option("--format", strata.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* poset_cmd = app.add_subcommand("poset", "Bruhat poset of the index set (covering relations)");
  add_strata_options(poset_cmd, strata, true);
  poset_cmd->add_option("--format", strata.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  int e = 1, f = 1, n = 1, r = 1, g = 2;
  std::string scalar_format = "json";
  auto* density_cmd = app.add_subcommand("density", "is the ordinary locus dense (symplectic case)");
  density_cmd->add_option("--e", e)->required();
  density_cmd->add_option("--f", f)->required();
  density_cmd->add_option("--n", n)->required();
  density_cmd->add_option("--format", scalar_format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* prank0_cmd = app.add_subcommand("prank0", "dimension of the p-rank 0 locus (split GU over Q)");
  prank0_cmd->add_option("--n", n)->required();
  prank0_cmd->add_option("--r", r)->required();
  prank0_cmd->add_option("--format", scalar_format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* hb_cmd = app.add_subcommand("hb", "Hilbert-Blumenthal report (e = 1, n = 1, f = g)");
  hb_cmd->add_option("--g", g)->required();

  std::string tuple_text;
  auto* newton_cmd = app.add_subcommand("newton", "Newton vector of a Frobenius tuple");
  newton_cmd->add_option("--tuple", tuple_text, "e.g. 'w=[2,1];l=[1,0];w=[1,2];l=[0,1]'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e_parse) {
    if (e_parse.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e_parse.what() << '\n';
    return kExitUsage;
  }

  const Limits limits = Limits::from_env();
  try {
    if (enum_cmd->parsed()) {
      cmd_enum_perm(strata, limits, out);
    } else if (table_cmd->parsed()) {
      cmd_prank_table(strata, limits, out);
    } else if (poset_cmd->parsed()) {
      cmd_poset(strata, limits, out);
    } else if (density_cmd->parsed()) {
      cmd_density(e, f, n, scalar_format, limits, out);
    } else if (prank0_cmd->parsed()) {
      cmd_prank0(n, r, scalar_format, limits, out);
    } else if (hb_cmd->parsed()) {
      cmd_hb(g, out);
    } else if (newton_cmd->parsed()) {
      cmd_newton(tuple_text, out);
    }
  } catch (const WindowExceeded& ex) {
    err << "limit exceeded: " << ex.what() << '\n';
    return kExitWindow;
  } catch (const InvariantFailure& ex) {
    err << "internal check failed: " << ex.what() << '\n';
    return kExitInvariant;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace krs::cli
