#pragma once

// Command-line front end: argument parsing, subcommands, table/CSV/JSON
// rendering. `main_with` is the whole program; tools/reptile.cpp only
// forwards to it.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reptile/acceptance.hpp"
#include "reptile/courant.hpp"
#include "reptile/svg.hpp"

namespace reptile {

/// Invalid flags or flag values.
struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string command;
  Shape shape = Shape::triangle;
  int dim = 2;
  Boundary bc = Boundary::neumann;
  std::string cutoff = "100";
  std::string format = "table";
  std::string output;  // empty: stdout
  int grid = 0;        // 0: automatic
  std::uint64_t seed = 1;
  std::string qn;
  std::string at;
  std::string lambda;
  int k = 0;
  std::size_t explain = 0;  // 0: no explanation requested
  std::string svg;
  std::vector<int> only;  // selftest criteria

  Domain domain() const { return shape == Shape::triangle ? Domain::triangle() : Domain::box(dim); }
  Problem problem() const { return {domain(), bc}; }
};

namespace cli {

using Json = nlohmann::ordered_json;

/// A command's output: metadata plus a homogeneous table.
struct Document {
  Json meta = Json::object();
  std::vector<std::string> columns;
  Json rows = Json::array();
  std::vector<std::string> notes;  // free text, table format only
};

inline std::string cell(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline void render(const Document& doc, const std::string& format, std::ostream& out) {
  if (format == "json") {
    Json j = doc.meta;
    if (!doc.columns.empty()) j["rows"] = doc.rows;
    out << j.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    for (const auto& [key, value] : doc.meta.items()) out << "# " << key << "," << csv_field(cell(value)) << "\n";
    if (doc.columns.empty()) return;
    for (std::size_t i = 0; i < doc.columns.size(); ++i) out << (i ? "," : "") << doc.columns[i];
    out << "\n";
    for (const auto& row : doc.rows) {
      for (std::size_t i = 0; i < doc.columns.size(); ++i) {
        const auto& v = row[doc.columns[i]];
        out << (i ? "," : "") << (v.is_null() ? std::string() : csv_field(cell(v)));
      }
      out << "\n";
    }
    return;
  }
  for (const auto& [key, value] : doc.meta.items()) out << key << ": " << cell(value) << "\n";
  if (!doc.columns.empty()) {
    std::vector<std::size_t> width(doc.columns.size());
    for (std::size_t i = 0; i < doc.columns.size(); ++i) width[i] = doc.columns[i].size();
    for (const auto& row : doc.rows)
      for (std::size_t i = 0; i < doc.columns.size(); ++i)
        width[i] = std::max(width[i], cell(row[doc.columns[i]]).size());
    if (!doc.meta.empty()) out << "\n";
    auto line = [&](auto&& get) {
      for (std::size_t i = 0; i < doc.columns.size(); ++i) {
        const bool last = i + 1 == doc.columns.size();
        out << (i ? "  " : "") << std::left << std::setw(last ? 0 : static_cast<int>(width[i])) << get(i);
      }
      out << "\n";
    };
    line([&](std::size_t i) { return doc.columns[i]; });
    line([&](std::size_t i) { return std::string(width[i], '-'); });
    for (const auto& row : doc.rows) line([&](std::size_t i) { return cell(row[doc.columns[i]]); });
  }
  for (const auto& n : doc.notes) out << n << "\n";
}

// ---------------------------------------------------------------------------
// value parsing

inline QuantumNumber parse_qn(const Problem& p, const std::string& text) {
  if (text.empty()) throw UsageError("--qn is required");
  std::vector<int> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("malformed quantum number: " + text);
    }
  }
  QuantumNumber q(std::move(v));
  if (!is_valid(p, q)) throw UsageError(to_string(q) + " is not a quantum number of " + describe(p));
  return q;
}

/// Coordinates; "pi", "0.5pi" and "pi/4" are accepted.
inline Point parse_point(const std::string& text) {
  Point out;
  std::stringstream ss(text);
  std::string tok;
  static const std::regex times_pi(R"(^\s*([0-9.eE+-]*)\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$)");
  while (std::getline(ss, tok, ',')) {
    std::smatch m;
    try {
      if (std::regex_match(tok, m, times_pi)) {
        double v = std::numbers::pi;
        if (m[1].length()) v *= std::stod(m[1].str());
        if (m[2].length()) v /= std::stod(m[2].str());
        out.push_back(v);
      } else {
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      }
    } catch (const std::exception&) {
      throw UsageError("malformed coordinate: " + tok);
    }
  }
  return out;
}

inline AlgebraicValue parse_value(const Problem& p, const std::string& text) {
  if (text.empty()) throw UsageError("--lambda is required");
  try {
    return AlgebraicValue::parse(p.domain.ring_dim(), text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

/// Exact cutoff: an algebraic expression such as "3 + 1*g^1", or a decimal
/// taken as the rational it denotes.
inline AlgebraicValue parse_cutoff(const Problem& p, const std::string& text) {
  const int ring = p.domain.ring_dim();
  static const std::regex decimal(R"(^\s*([0-9]+)(?:\.([0-9]*))?\s*$)");
  std::smatch m;
  AlgebraicValue v;
  if (std::regex_match(text, m, decimal)) {
    const std::string frac = m[2].str();
    Integer num(m[1].str() + frac), den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    if (num <= 0) throw UsageError("cutoff must be positive");
    v = den == 1 ? AlgebraicValue::integer(ring, num) : rational_cutoff(p, num, den);
  } else {
    v = parse_value(p, text);
  }
  if (v <= AlgebraicValue::zero(ring)) throw UsageError("cutoff must be positive");
  return v;
}

inline std::string qn_list(const std::vector<QuantumNumber>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

inline std::string rat(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Json problem_meta(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["domain"] = std::string(to_string(c.shape));
  j["dim"] = c.dim;
  j["bc"] = std::string(to_string(c.bc));
  return j;
}

// ---------------------------------------------------------------------------
// subcommands

inline Document cmd_spectrum(const RunConfig& c) {
  const Problem p = c.problem();
  const auto si = build_index(p, parse_cutoff(p, c.cutoff));
  Document d;
  d.meta = problem_meta(c);
  d.meta["cutoff"] = c.cutoff;
  d.meta["levels"] = si.size();
  d.columns = {"position", "value", "approx", "multiplicity", "parity", "core", "k", "members"};
  for (const auto& l : si.levels()) {
    Json r;
    r["position"] = l.position;
    r["value"] = l.value.to_string();
    r["approx"] = l.approx;
    r["multiplicity"] = l.multiplicity();
    r["parity"] = std::string(to_string(parity(l.value)));
    if (l.value.is_zero()) {
      r["core"] = nullptr;
      r["k"] = nullptr;
    } else {
      const auto oc = odd_core(l.value);
      r["core"] = oc.core.to_string();
      r["k"] = oc.k;
    }
    r["members"] = qn_list(l.members);
    d.rows.push_back(std::move(r));
  }
  return d;
}

inline std::string witness_text(const Verdict& v) {
  const auto& w = v.witness;
  if (v.sharp) return "";
  if (w.subdomain) {
    const auto& s = *w.subdomain;
    const std::string name = s.sub == Subdomain::square_s ? "S" : "R(" + std::to_string(s.k) + ")";
    return name + " (" + std::to_string(s.first.first) + "," + std::to_string(s.first.second) + ")/(" +
           std::to_string(s.second.first) + "," + std::to_string(s.second.second) + ")";
  }
  if (w.multiplicity > 1) return "d=" + std::to_string(w.multiplicity);
  if (w.reference)
    return std::string(*w.reference == ReferenceKind::diag ? "diag(" : "axis(") + std::to_string(w.reference_param) +
           ") + " + qn_list(w.points);
  return qn_list(w.points);
}

inline Json verdict_row(const Verdict& v) {
  Json r;
  r["position"] = v.position;
  r["value"] = v.value.to_string();
  r["approx"] = v.approx;
  r["multiplicity"] = v.multiplicity;
  r["parity"] = std::string(to_string(v.parity));
  if (v.value.is_zero()) {
    r["core"] = nullptr;
    r["k"] = nullptr;
  } else {
    r["core"] = v.core.core.to_string();
    r["k"] = v.core.k;
  }
  r["N"] = v.n;
  r["nu"] = v.nu ? Json(*v.nu) : Json(nullptr);
  r["sharp"] = v.sharp;
  r["reason"] = std::string(to_string(v.reason));
  r["witness"] = witness_text(v);
  return r;
}

inline Document cmd_verdicts(const RunConfig& c) {
  const Problem p = c.problem();
  if (p.bc != Boundary::neumann) throw UsageError("verdicts are available for Neumann problems only");
  const auto si = build_index(p, parse_cutoff(p, c.cutoff));
  const auto vs = classify(si);
  Document d;
  d.meta = problem_meta(c);
  d.meta["cutoff"] = c.cutoff;
  d.meta["levels"] = vs.size();
  Json sharp = Json::array();
  for (auto pos : sharp_positions(vs)) sharp.push_back(pos);
  d.meta["sharp_positions"] = sharp;
  if (c.explain) {
    const Verdict* hit = nullptr;
    for (const auto& v : vs)
      if (c.explain >= v.position && c.explain < v.position + v.multiplicity) hit = &v;
    if (!hit) throw UsageError("position " + std::to_string(c.explain) + " is not below the cutoff");
    d.meta["explain"] = c.explain;
    d.meta["verdict"] = verdict_row(*hit);
    d.meta["members"] = qn_list(hit->members);
    Json steps = Json::array();
    for (const auto& s : hit->explanation) steps.push_back(s);
    d.meta["explanation"] = steps;
    return d;
  }
  d.columns = {"position", "value", "approx", "multiplicity", "parity", "core", "k",
               "N", "nu", "sharp", "reason", "witness"};
  for (const auto& v : vs) d.rows.push_back(verdict_row(v));
  return d;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

inline Document cmd_nodal(const RunConfig& c) {
  const Problem p = c.problem();
  const auto m = parse_qn(p, c.qn);
  const auto f = EigenfunctionCombo::basis(p, m);
  const NodalCount nc = c.grid ? count_grid(f, c.grid) : nodal_count(p, m);
  Document d;
  d.meta = problem_meta(c);
  d.meta["qn"] = to_string(m);
  d.meta["value"] = eigenvalue(p, m).to_string();
  d.meta["nu"] = nc.nu;
  d.meta["method"] = nc.method == CountMethod::formula ? "formula" : "grid";
  d.meta["resolution"] = nc.resolution;
  d.meta["stable"] = nc.stable;
  if (!c.svg.empty()) {
    write_file(c.svg, nodal_svg(f, c.grid));
    d.meta["svg"] = c.svg;
  }
  return d;
}

inline std::string facet_text(const Domain& dom, const Segment& s) {
  (void)dom;
  return "(" + rat(s.x0) + "," + rat(s.y0) + ")-(" + rat(s.x1) + "," + rat(s.y1) + ")";
}

inline std::string facet_text(const Slab& s) {
  std::string t = "x" + std::to_string(s.axis + 1) + "=" + rat(s.pos);
  for (std::size_t j = 0; j < s.range.size(); ++j) {
    if (static_cast<int>(j) == s.axis) continue;
    t += " x" + std::to_string(j + 1) + "=[" + rat(s.range[j].first) + "," + rat(s.range[j].second) + "]";
  }
  return t;
}

inline Document cmd_frame(const RunConfig& c) {
  const Domain dom = c.domain();
  if (c.k < 0) throw UsageError("--k must be nonnegative");
  const auto frame = build_frame(dom, c.k);
  const auto pc = partition_count(dom, c.k);
  Document d;
  d.meta = problem_meta(c);
  d.meta["k"] = c.k;
  d.meta["units"] = dom.is_triangle() ? "multiples of pi" : "fractions of the edge lengths";
  d.meta["facets"] = frame.facet_count();
  d.meta["partitions"] = pc.count;
  d.meta["resolution"] = pc.resolution;
  d.columns = {"index", "facet"};
  std::size_t i = 0;
  for (const auto& s : frame.segments) d.rows.push_back({{"index", ++i}, {"facet", facet_text(dom, s)}});
  for (const auto& s : frame.slabs) d.rows.push_back({{"index", ++i}, {"facet", facet_text(s)}});
  if (!c.svg.empty()) {
    write_file(c.svg, frame_svg(frame));
    d.meta["svg"] = c.svg;
  }
  return d;
}

inline Document cmd_eval(const RunConfig& c) {
  const Problem p = c.problem();
  const auto m = parse_qn(p, c.qn);
  const Point x = parse_point(c.at);
  if (x.size() != static_cast<std::size_t>(p.domain.dim))
    throw UsageError("--at needs " + std::to_string(p.domain.dim) + " coordinates");
  const auto f = EigenfunctionCombo::basis(p, m);
  Document d;
  d.meta = problem_meta(c);
  d.meta["qn"] = to_string(m);
  d.meta["value"] = eigenvalue(p, m).to_string();
  Json at = Json::array();
  for (double v : x) at.push_back(v);
  d.meta["at"] = at;
  d.meta["phi"] = f(x);
  return d;
}

inline Document cmd_checksym(const RunConfig& c, int& status) {
  const Problem p = c.problem();
  std::mt19937_64 rng(c.seed);
  std::optional<EigenfunctionCombo> f;
  if (!c.qn.empty())
    f.emplace(EigenfunctionCombo::basis(p, parse_qn(p, c.qn)));
  else
    f.emplace(random_combo(p, parse_value(p, c.lambda), rng));
  const auto got = symmetry_check(*f);
  const auto want = expected_symmetry(p, f->value());
  Document d;
  d.meta = problem_meta(c);
  d.meta["value"] = f->value().to_string();
  d.meta["parity"] = std::string(to_string(parity(f->value())));
  d.meta["observed"] = std::string(to_string(got));
  d.meta["expected"] = std::string(to_string(want));
  d.meta["ok"] = got == want;
  if (got != want) status = 1;
  return d;
}

inline Document cmd_checkframe(const RunConfig& c, int& status) {
  const Problem p = c.problem();
  if (c.k < 0) throw UsageError("--k must be nonnegative");
  const auto si = build_index(p, parse_cutoff(p, c.cutoff));
  const auto frame = build_frame(p.domain, c.k);
  std::mt19937_64 rng(c.seed);
  Document d;
  d.meta = problem_meta(c);
  d.meta["cutoff"] = c.cutoff;
  d.meta["k"] = c.k;
  d.columns = {"core", "value", "frame_max", "sup", "ok"};
  for (const auto& l : si.levels()) {
    if (l.value.is_zero() || parity(l.value) != Parity::odd) continue;
    const auto f = random_combo(p, scale_gamma2(l.value, c.k), rng);
    const double on = frame_vanishing(f, frame, 10000);
    const double sup = sup_estimate(f);
    const bool ok = on <= 1e-9 * sup;
    if (!ok) status = 1;
    d.rows.push_back({{"core", l.value.to_string()}, {"value", f.value().to_string()}, {"frame_max", on},
                      {"sup", sup}, {"ok", ok}});
  }
  return d;
}

inline Document cmd_deficiency(const RunConfig& c) {
  const Problem p = c.problem();
  const auto lambda = parse_value(p, c.lambda);
  const auto si = build_index(p, lambda + AlgebraicValue::integer(lambda.dim(), 1));
  const auto r = deficiency_bound(si, lambda);
  Document d;
  d.meta = problem_meta(c);
  d.meta["lambda"] = lambda.to_string();
  d.meta["core"] = r.core.core.to_string();
  d.meta["k"] = r.core.k;
  d.meta["d_core"] = r.d_core;
  d.meta["partitions"] = r.partitions;
  d.meta["multiple_bound"] = r.multiple_bound;
  d.meta["boundary_even"] = r.boundary_bound ? Json(r.boundary_even) : Json(nullptr);
  d.meta["boundary_bound"] = r.boundary_bound ? Json(*r.boundary_bound) : Json(nullptr);
  d.meta["bound"] = r.bound;
  const bool simple = si.level_of(lambda).multiplicity() == 1;
  d.meta["exact"] = simple ? Json(simple_deficiency(si, lambda)) : Json(nullptr);
  return d;
}

inline Document cmd_dirichlet(const RunConfig& c, int& status) {
  Problem p = c.problem();
  p.bc = Boundary::dirichlet;
  const auto si = build_index(p, parse_cutoff(p, c.cutoff));
  Document d;
  d.meta = problem_meta(c);
  d.meta["bc"] = "dirichlet";
  d.meta["cutoff"] = c.cutoff;
  d.columns = {"value", "folded", "delta", "folded_delta", "boundary_odd", "rhs", "ok"};
  std::size_t bad = 0;
  for (const auto& level : si.levels()) {
    if (parity(level.value) != Parity::even || level.multiplicity() != 1) continue;
    const auto folded = scale_gamma2(level.value, -1);
    const Level* low = si.find(folded);
    if (!low || low->multiplicity() != 1) continue;
    const auto id = dirichlet_deficiency_check(si, level.value);
    const bool ok = id.lhs == id.rhs;
    bad += !ok;
    d.rows.push_back({{"value", level.value.to_string()}, {"folded", folded.to_string()}, {"delta", id.lhs},
                      {"folded_delta", id.folded_deficiency}, {"boundary_odd", id.boundary_odd}, {"rhs", id.rhs},
                      {"ok", ok}});
  }
  d.meta["checked"] = d.rows.size();
  d.meta["failures"] = bad;
  if (bad) status = 1;
  return d;
}

inline Document cmd_selftest(const RunConfig& c, std::ostream& progress, int& status) {
  const std::set<int> only(c.only.begin(), c.only.end());
  std::ostringstream sink;
  const auto results = run_acceptance(c.format == "table" ? progress : sink, only);
  Document d;
  d.meta["command"] = "selftest";
  d.columns = {"criterion", "title", "pass", "seconds", "detail"};
  std::size_t failed = 0;
  for (const auto& r : results) {
    failed += !r.pass;
    d.rows.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass},
                      {"seconds", static_cast<long>(r.seconds * 10) / 10.0}, {"detail", r.detail}});
  }
  d.meta["passed"] = results.size() - failed;
  d.meta["total"] = results.size();
  if (failed) status = 1;
  if (c.format == "table") d.columns.clear();  // lines already printed
  return d;
}

}  // namespace cli

/// Parses argv into a RunConfig. Throws UsageError; returns nullopt after
/// printing help.
inline std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig c;
  CLI::App app{"Spectra, nodal counts and Courant-sharp verdicts for Neumann 2-rep-tiles", "reptile"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string domain = "triangle", bc = "neumann";
  std::optional<int> dim;
  bool json = false;
  app.add_option("--domain", domain, "triangle or box")->check(CLI::IsMember({"triangle", "box"}));
  app.add_option("--dim", dim, "box dimension (>= 2)");
  app.add_option("--bc", bc, "neumann or dirichlet")->check(CLI::IsMember({"neumann", "dirichlet"}));
  app.add_option("--cutoff", c.cutoff, "strict upper bound: decimal or exact, e.g. \"3 + 1*g^1\"");
  app.add_option("--format", c.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_flag("--json", json, "same as --format json");
  app.add_option("-o,--output", c.output, "write the report to a file");
  app.add_option("--seed", c.seed, "seed for random eigenspace combinations");

  auto* spectrum = app.add_subcommand("spectrum", "sorted eigenvalues with multiplicities and odd cores");
  auto* verdicts = app.add_subcommand("verdicts", "Courant-sharp verdict for every eigenvalue below the cutoff");
  verdicts->add_option("--explain", c.explain, "print the witness chain for one spectral position")
      ->check(CLI::PositiveNumber);
  auto* nodal = app.add_subcommand("nodal", "nodal domain count of a basis eigenfunction");
  nodal->add_option("--qn", c.qn, "quantum number, e.g. 3,3")->required();
  nodal->add_option("--grid", c.grid, "force the grid count at this base resolution (>= 16)");
  nodal->add_option("--svg", c.svg, "write the nodal domains as SVG");
  auto* frame = app.add_subcommand("frame", "k-frame facets and the induced partition count");
  frame->add_option("--k", c.k, "frame level")->required();
  frame->add_option("--svg", c.svg, "write the frame as SVG");
  auto* eval = app.add_subcommand("eval", "evaluate a basis eigenfunction");
  eval->add_option("--qn", c.qn, "quantum number")->required();
  eval->add_option("--at", c.at, "point, e.g. pi/2,0.3")->required();
  auto* checksym = app.add_subcommand("checksym", "reflection symmetry against the parity law");
  auto* sym_qn = checksym->add_option("--qn", c.qn, "basis eigenfunction");
  auto* sym_lambda = checksym->add_option("--lambda", c.lambda, "random combination from this eigenspace");
  sym_qn->excludes(sym_lambda);
  auto* checkframe = app.add_subcommand("checkframe", "eigenfunctions of odd cores scaled by k vanish on the k-frame");
  checkframe->add_option("--k", c.k, "frame level")->required();
  auto* deficiency = app.add_subcommand("deficiency", "lower bounds on the nodal deficiency");
  deficiency->add_option("--lambda", c.lambda, "eigenvalue")->required();
  app.add_subcommand("dirichlet-check", "Dirichlet deficiency identity on every qualifying eigenvalue");
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--only", c.only, "criterion numbers")->delimiter(',');
  (void)spectrum;

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  c.command = app.get_subcommands().front()->get_name();
  if (checksym->parsed() && c.qn.empty() && c.lambda.empty()) throw UsageError("checksym needs --qn or --lambda");
  if (json) c.format = "json";
  c.bc = bc == "dirichlet" ? Boundary::dirichlet : Boundary::neumann;
  if (domain == "triangle") {
    c.shape = Shape::triangle;
    if (dim && *dim != 2) throw UsageError("the triangle is planar; --dim must be 2");
    c.dim = 2;
  } else {
    c.shape = Shape::box;
    c.dim = dim.value_or(2);
    if (c.dim < 2 || c.dim > 24) throw UsageError("--dim must be between 2 and 24 for boxes");
  }
  if (c.grid != 0 && c.grid < 16) throw UsageError("--grid must be at least 16");
  return c;
}

/// Executes one configuration. Exit status: 0 success, 1 failed check or
/// internal inconsistency, 2 usage error.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    int status = 0;
    cli::Document doc;
    if (c.command == "spectrum") doc = cli::cmd_spectrum(c);
    else if (c.command == "verdicts") doc = cli::cmd_verdicts(c);
    else if (c.command == "nodal") doc = cli::cmd_nodal(c);
    else if (c.command == "frame") doc = cli::cmd_frame(c);
    else if (c.command == "eval") doc = cli::cmd_eval(c);
    else if (c.command == "checksym") doc = cli::cmd_checksym(c, status);
    else if (c.command == "checkframe") doc = cli::cmd_checkframe(c, status);
    else if (c.command == "deficiency") doc = cli::cmd_deficiency(c);
    else if (c.command == "dirichlet-check") doc = cli::cmd_dirichlet(c, status);
    else if (c.command == "selftest") doc = cli::cmd_selftest(c, out, status);
    else throw UsageError("unknown command: " + c.command);
    if (c.output.empty()) {
      cli::render(doc, c.format, out);
    } else {
      std::ostringstream buf;
      cli::render(doc, c.format, buf);
      cli::write_file(c.output, buf.str());
    }
    return status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << "\n";
    return 1;
  } catch (const InstabilityError& e) {
    err << "unstable count: " << e.what() << "\n";
    return 1;
  } catch (const ResolutionError& e) {
    err << "unresolved count: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    // invalid values that only the library can detect (non-eigenvalue, point outside the domain, ...)
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

inline int main_with(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto c = parse_args(argc, argv, out);
    if (!c) return 0;
    return run(*c, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun with --help for usage\n";
    return 2;
  }
}

}  // namespace reptile
