#include "posys/problem_io.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "posys/errors.hpp"
#include "posys/linalg.hpp"
#include "posys/oracle.hpp"
#include "posys/signchar.hpp"
#include "posys/trinomials.hpp"

namespace posys::io {

using nlohmann::json;

namespace {

Rat rat_from_json(const json& v, const char* field) {
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_number_float()) return rat_from_double(v.get<double>());
  throw ParseError(std::string("parse_problem: field '") + field + "' holds a non-numeric entry");
}

bool json_matrix(const json& v, const char* field, std::vector<RatVec>& rows, bool& saw_float) {
  if (!v.is_array()) throw ParseError(std::string("parse_problem: '") + field + "' must be an array of rows");
  rows.clear();
  saw_float = false;
  for (const auto& r : v) {
    if (!r.is_array()) throw ParseError(std::string("parse_problem: '") + field + "' must be an array of rows");
    RatVec row;
    for (const auto& e : r) {
      if (e.is_number_float()) saw_float = true;
      row.push_back(rat_from_json(e, field));
    }
    rows.push_back(std::move(row));
  }
  return !rows.empty();
}

}  // namespace

framework::ProblemInstance parse_problem(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("parse_problem: ") + e.what());
  }
  if (!doc.contains("A") || !doc.contains("B") || !doc.contains("c"))
    throw ParseError("parse_problem: fields A, B, c are required");

  std::vector<RatVec> a_rows, b_rows;
  bool a_float = false, b_float = false;
  json_matrix(doc["A"], "A", a_rows, a_float);
  json_matrix(doc["B"], "B", b_rows, b_float);

  std::size_t m;
  if (!a_rows.empty())
    m = a_rows.front().size();
  else if (!b_rows.empty())
    m = b_rows.front().size();
  else
    m = doc["c"].is_array() ? doc["c"].size() : 0;
  for (const auto& r : a_rows)
    if (r.size() != m) throw DimensionMismatch("parse_problem: ragged rows in A");
  for (const auto& r : b_rows)
    if (r.size() != m) throw DimensionMismatch("parse_problem: B and A disagree on monomial count");

  if (!doc["c"].is_array()) throw ParseError("parse_problem: 'c' must be an array");
  RatVec params;
  for (const auto& e : doc["c"]) params.push_back(rat_from_json(e, "c"));
  if (params.size() != m) throw DimensionMismatch("parse_problem: c has wrong length");

  std::optional<geometry::ClassPartition> partition;
  if (doc.contains("classes")) {
    std::vector<std::size_t> sizes;
    std::size_t total = 0;
    for (const auto& e : doc["classes"]) {
      if (!e.is_number_unsigned() && !e.is_number_integer())
        throw ParseError("parse_problem: 'classes' must hold positive sizes");
      long long s = e.get<long long>();
      if (s <= 0) throw ParseError("parse_problem: class sizes must be positive");
      sizes.push_back(static_cast<std::size_t>(s));
      total += static_cast<std::size_t>(s);
    }
    if (total != m) throw DimensionMismatch("parse_problem: class sizes must sum to the monomial count");
    partition = geometry::ClassPartition::from_sizes(sizes);
  }

  framework::Tolerances tols;
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (t.contains("rank")) tols.rank = t["rank"].get<double>();
    if (t.contains("condition")) tols.condition = t["condition"].get<double>();
  }

  RatMatrix a(a_rows.size(), m);
  for (std::size_t i = 0; i < a_rows.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = a_rows[i][j];

  try {
    if (b_float) {
      RealMatrix b(b_rows.size(), m);
      for (std::size_t i = 0; i < b_rows.size(); ++i)
        for (std::size_t j = 0; j < m; ++j) b(i, j) = to_double(b_rows[i][j]);
      return framework::make_instance(std::move(a), std::move(b), std::move(params), partition, tols);
    }
    RatMatrix b(b_rows.size(), m);
    for (std::size_t i = 0; i < b_rows.size(); ++i)
      for (std::size_t j = 0; j < m; ++j) b(i, j) = b_rows[i][j];
    return framework::make_instance(std::move(a), std::move(b), std::move(params), partition, tols);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("parse_problem: ") + e.what());
  }
}

namespace {

json rat_matrix_json(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json rat_vec_json(const RatVec& v) {
  json out = json::array();
  for (const Rat& x : v) out.push_back(rat_to_string(x));
  return out;
}

}  // namespace

std::string serialize_problem(const framework::ProblemInstance& p) {
  json doc;
  doc["A"] = rat_matrix_json(p.coeff);
  if (p.exact_exponents)
    doc["B"] = rat_matrix_json(p.expo_rat);
  else
    doc["B"] = real_matrix_json(p.expo);
  doc["c"] = rat_vec_json(p.params);
  json classes = json::array();
  for (const auto& cls : p.partition.classes) classes.push_back(cls.size());
  doc["classes"] = classes;
  doc["tolerances"] = {{"rank", p.tols.rank}, {"condition", p.tols.condition}};
  return doc.dump(2);
}

const std::string& fixture(const std::string& name) {
  for (const auto& [n, text] : bundled_fixtures())
    if (n == name) return text;
  throw std::invalid_argument("fixture: unknown name '" + name + "'");
}

}  // namespace posys::io

// ---------------------------------------------------------------------------
// CLI
// ---------------------------------------------------------------------------

#include <CLI11.hpp>

#include <fstream>

namespace posys::io {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* case_name(framework::SystemCase c) {
  switch (c) {
    case framework::SystemCase::DependencyZeroSubspace: return "D0_SUBSPACE";
    case framework::SystemCase::DependencyZeroFull: return "D0_FULL";
    case framework::SystemCase::DependencyPositive: return "DPOS";
    case framework::SystemCase::NonGeneric: return "NONGENERIC";
  }
  return "?";
}

json classification_json(const framework::Classification& cl) {
  return json{{"classes", cl.num_classes},
              {"monomials", cl.num_monomials},
              {"variables", cl.num_variables},
              {"equations", cl.num_equations},
              {"dependency", cl.dependency},
              {"dim_difference_subspace", cl.dim_difference},
              {"dim_polytope", cl.dim_polytope},
              {"generic", cl.generic},
              {"case", case_name(cl.kind)}};
}

void print_classification_text(std::ostream& out, const framework::Classification& cl) {
  out << "classes (l)        : " << cl.num_classes << "\n"
      << "monomials (m)      : " << cl.num_monomials << "\n"
      << "variables (n)      : " << cl.num_variables << "\n"
      << "equations (n')     : " << cl.num_equations << "\n"
      << "dependency (d)     : " << cl.dependency << "\n"
      << "dim L              : " << cl.dim_difference << "\n"
      << "dim P              : " << cl.dim_polytope << "\n"
      << "generic            : " << (cl.generic ? "yes" : "no") << "\n"
      << "case               : " << case_name(cl.kind) << "\n";
}

struct SolutionRecord {
  RealVec x;
  double residual = 0;
  int multiplicity = 1;
};

json solutions_json(const std::vector<SolutionRecord>& sols) {
  json arr = json::array();
  for (const auto& s : sols) {
    json e;
    e["x"] = s.x;
    e["residual"] = s.residual;
    e["multiplicity"] = s.multiplicity;
    arr.push_back(std::move(e));
  }
  return arr;
}

void print_solutions_text(std::ostream& out, const std::vector<SolutionRecord>& sols) {
  if (sols.empty()) {
    out << "no positive solutions\n";
    return;
  }
  out << std::setprecision(15);
  for (std::size_t i = 0; i < sols.size(); ++i) {
    out << "solution " << i + 1 << ": (";
    for (std::size_t k = 0; k < sols[i].x.size(); ++k)
      out << (k ? ", " : "") << sols[i].x[k];
    out << ")  residual " << sols[i].residual;
    if (sols[i].multiplicity > 1) out << "  multiplicity " << sols[i].multiplicity;
    out << "\n";
  }
}

struct CommonOpts {
  std::string file;
  std::string format = "text";
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::size_t starts = 4096;
  std::vector<double> lambdas;
  std::vector<double> taus;
  double cstar = 0;  // 0: take from the instance
  std::size_t samples = 512;
};

framework::ProblemInstance load(const CommonOpts& o) {
  framework::ProblemInstance p = parse_problem(read_file(o.file));
  p.tols.condition = o.tol;
  return p;
}

void emit(std::ostream& out, const CommonOpts& o, const json& report,
          const std::function<void(std::ostream&)>& text) {
  if (o.format == "json")
    out << report.dump(2) << "\n";
  else
    text(out);
}

// ---- solve routing ---------------------------------------------------------

bool univariate_trinomial_shape(const framework::ProblemInstance& p) {
  return p.num_variables() == 1 && p.num_monomials() == 3 && p.num_classes() == 1 &&
         p.num_equations() == 1;
}

// Normalizes a one-row trinomial to c1 x^{b1} + c2 x^{b2} = 1.
struct UniTri {
  double b1, b2, c1, c2;
};

UniTri extract_univariate(const framework::ProblemInstance& p) {
  RatVec row = p.coeff.row(0);
  int neg = 0, pos = 0;
  for (const Rat& x : row) (x < 0 ? neg : (x > 0 ? pos : neg)) += x == 0 ? 0 : 1;
  if (pos + neg != 3 || (neg != 1 && pos != 1))
    throw std::invalid_argument("solve: trinomial must have one minority-sign monomial");
  if (pos == 1)
    for (Rat& x : row) x = -x;
  std::size_t k = 0;
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < 3; ++j)
    if (row[j] < 0)
      k = j;
    else
      others.push_back(j);
  UniTri t;
  Rat denom = -row[k] * p.params[k];
  t.c1 = to_double(row[others[0]] * p.params[others[0]] / denom);
  t.c2 = to_double(row[others[1]] * p.params[others[1]] / denom);
  t.b1 = p.expo(0, others[0]) - p.expo(0, k);
  t.b2 = p.expo(0, others[1]) - p.expo(0, k);
  return t;
}

bool curve_standard_shape(const framework::ProblemInstance& p, double& b1, double& b2, double& b3,
                          double& cstar) {
  if (p.num_variables() != 3 || p.num_classes() != 2 || p.num_monomials() != 6) return false;
  for (const auto& cls : p.partition.classes)
    if (cls.size() != 3) return false;
  const RealMatrix& b = p.expo;
  auto is_col = [&](std::size_t j, double e0, double e1, double e2) {
    return b(0, j) == e0 && b(1, j) == e1 && b(2, j) == e2;
  };
  if (!is_col(0, 1, 0, 0) || !is_col(1, 0, 1, 0) || !is_col(2, 0, 0, 0) || !is_col(3, 0, 0, 1) ||
      !is_col(5, 0, 0, 0))
    return false;
  b1 = b(0, 4);
  b2 = b(1, 4);
  b3 = b(2, 4);
  double z[6] = {b1, b2, -(b1 + b2), b3, -1, 1 - b3};
  double s = 0;
  for (int j = 0; j < 6; ++j) s += z[j] * std::log(to_double(p.params[j]));
  cstar = std::exp(s);
  return true;
}

int cmd_classify(const CommonOpts& o, std::ostream& out) {
  auto p = load(o);
  auto cl = framework::classify(p);
  json report = classification_json(cl);
  emit(out, o, report, [&](std::ostream& os) { print_classification_text(os, cl); });
  return 0;
}

int cmd_solve(const CommonOpts& o, std::ostream& out) {
  auto p = load(o);
  auto cl = framework::classify(p);
  json report;
  report["classification"] = classification_json(cl);

  if (cl.dependency == 0) {
    auto sp = framework::solution_set_d0(p);
    // One weight per two-vertex class from --lambda; uniform weights elsewhere.
    std::vector<RealVec> weights;
    std::size_t next_lambda = 0;
    for (const auto& cg : sp.geo.classes) {
      if (cg.vertices.size() == 2 && next_lambda < o.lambdas.size()) {
        double l = o.lambdas[next_lambda++];
        if (!(l > 0 && l < 1)) throw DomainError("solve: --lambda values must lie in (0,1)");
        weights.push_back({l, 1 - l});
      } else {
        weights.push_back(RealVec(cg.vertices.size(), 1.0 / cg.vertices.size()));
      }
    }
    RealVec log_free(sp.free_directions.size(), 0.0);
    for (std::size_t i = 0; i < sp.free_directions.size() && i < o.taus.size(); ++i) {
      if (!(o.taus[i] > 0)) throw DomainError("solve: --tau values must be positive");
      log_free[i] = std::log(o.taus[i]);
    }
    RealVec x = sp.evaluate(weights, log_free);
    SolutionRecord rec{x, framework::residual(p, x), 1};

    json param;
    param["lift_exponents"] = real_matrix_json(sp.lift);
    json vertices = json::array();
    for (const auto& cg : sp.geo.classes) {
      json vs = json::array();
      for (const auto& v : cg.vertices) vs.push_back(rat_vec_json(v));
      vertices.push_back(std::move(vs));
    }
    param["class_vertices"] = vertices;
    json dirs = json::array();
    for (const auto& d : sp.free_directions) dirs.push_back(d);
    param["free_directions"] = dirs;
    param["unique"] = sp.unique;
    report["parametrization"] = param;
    report["solutions"] = solutions_json({rec});
    emit(out, o, report, [&](std::ostream& os) {
      os << "dependency zero: explicit parametrization\n";
      os << "x = (y o c^-1)^E o exp(span of free directions)\n";
      os << "classes and polytope vertices:\n";
      for (std::size_t i = 0; i < sp.geo.classes.size(); ++i) {
        os << "  class " << i + 1 << ":";
        for (const auto& v : sp.geo.classes[i].vertices) {
          os << " (";
          for (std::size_t j = 0; j < v.size(); ++j) os << (j ? "," : "") << rat_to_string(v[j]);
          os << ")";
        }
        os << "\n";
      }
      os << "free directions (L-perp):";
      if (sp.free_directions.empty()) os << " none";
      for (const auto& d : sp.free_directions) {
        os << " (";
        for (std::size_t j = 0; j < d.size(); ++j) os << (j ? "," : "") << d[j];
        os << ")";
      }
      os << "\n";
      if (sp.unique) os << "square dependency-zero system: the solution is unique\n";
      os << "sample at the given (lambda, tau):\n";
      print_solutions_text(os, {rec});
    });
    return 0;
  }

  std::vector<SolutionRecord> sols;
  std::string method;
  if (univariate_trinomial_shape(p)) {
    method = "univariate_trinomial";
    UniTri t = extract_univariate(p);
    for (const auto& r : signchar::trinomial_solve(t.b1, t.b2, t.c1, t.c2))
      sols.push_back({{r.x}, framework::residual(p, {r.x}), r.multiplicity});
  } else {
    bool handled = false;
    try {
      auto sp = trinomials::make_segment_problem(p);
      method = "segment";
      for (const auto& r : trinomials::segment_solve(sp))
        sols.push_back({r.x, framework::residual(p, r.x), r.multiplicity});
      report["bound"] = trinomials::segment_rule_of_signs(sp);
      handled = true;
    } catch (const std::invalid_argument&) {
    } catch (const Decomposable&) {
    }
    if (!handled) {
      try {
        auto tp = trinomials::two_trinomial_standardize(p);
        method = "two_trinomials";
        for (const auto& r : trinomials::two_trinomial_solve(tp))
          sols.push_back({{r.x[0], r.x[1]}, framework::residual(p, {r.x[0], r.x[1]}), r.multiplicity});
        report["bound"] = trinomials::two_trinomial_bound(tp);
        handled = true;
      } catch (const std::invalid_argument&) {
      }
    }
    if (!handled) {
      if (p.num_equations() != p.num_variables())
        throw Unsupported(
            "solve: no finite-solution solver for this shape; for d = 1 instances in standard "
            "three-variable form, `curve` samples the solution components");
      method = "oracle_multistart";
      oracle::OracleConfig cfg;
      cfg.seed = o.seed;
      cfg.starts = o.starts;
      for (const auto& s : oracle::multistart_solve(p, cfg)) sols.push_back({s.x, s.residual, 1});
    }
  }
  report["method"] = method;
  report["solutions"] = solutions_json(sols);
  emit(out, o, report, [&](std::ostream& os) {
    os << "method: " << method << "\n";
    print_solutions_text(os, sols);
  });
  return sols.empty() ? 2 : 0;
}

int cmd_bound(const CommonOpts& o, std::ostream& out) {
  auto p = load(o);
  json report;
  std::vector<std::string> lines;
  std::optional<long long> headline;

  if (univariate_trinomial_shape(p)) {
    UniTri t = extract_univariate(p);
    long long rb = (t.b1 / t.b2 > 0) ? 1 : 2;
    report["laguerre"] = rb;
    lines.push_back("sign-change bound (univariate trinomial): " + std::to_string(rb));
    headline = rb;
  }
  try {
    auto sp = trinomials::make_segment_problem(p);
    int b = trinomials::segment_rule_of_signs(sp);
    report["segment_rule_of_signs"] = b;
    lines.push_back("segment rule of signs: " + std::to_string(b));
    headline = b;
  } catch (const std::exception&) {
  }
  try {
    auto tp = trinomials::two_trinomial_standardize(p);
    int b = trinomials::two_trinomial_bound(tp);
    report["two_trinomial_bound"] = b;
    lines.push_back("two-trinomial bound: " + std::to_string(b));
    headline = b;
  } catch (const std::exception&) {
  }
  if (p.num_variables() == 2 && p.num_classes() == 2) {
    // Trinomial plus t-nomial: t monomials in the larger class.
    std::size_t s0 = p.partition.classes[0].size(), s1 = p.partition.classes[1].size();
    if ((s0 == 3 || s1 == 3) && std::max(s0, s1) >= 3) {
      long long t = static_cast<long long>(std::max(s0, s1));
      long long b = trinomials::tnomial_bound(t);
      report["tnomial_bound"] = b;
      lines.push_back("trinomial + t-nomial bound (t = " + std::to_string(t) +
                      "): " + std::to_string(b));
      if (!headline) headline = b;
    }
  }
  if (lines.empty()) throw Unsupported("bound: no applicable bound for this shape");
  if (headline) report["bound"] = *headline;
  emit(out, o, report, [&](std::ostream& os) {
    for (const auto& l : lines) os << l << "\n";
    if (headline) os << *headline << "\n";
  });
  return 0;
}

int cmd_certify(const CommonOpts& o, std::ostream& out) {
  auto p = load(o);
  auto unique = framework::certify_uniqueness(p);
  bool exist = framework::certify_unique_existence(p);
  json report;
  report["uniqueness"] = unique.certified;
  if (unique.witness) {
    json w = json::array();
    for (auto s : unique.witness->s) w.push_back(static_cast<int>(s));
    report["witness"] = w;
  }
  report["unique_existence"] = exist;
  emit(out, o, report, [&](std::ostream& os) {
    os << "uniqueness on the polytope (all c): " << (unique.certified ? "certified" : "not certified")
       << "\n";
    if (unique.witness) {
      os << "witness sign vector: (";
      for (std::size_t j = 0; j < unique.witness->s.size(); ++j) {
        int v = unique.witness->s[j];
        os << (j ? "," : "") << (v > 0 ? "+" : (v < 0 ? "-" : "0"));
      }
      os << ")\n";
    }
    os << "unique existence (all c, robust): " << (exist ? "certified" : "not certified") << "\n";
  });
  return 0;
}

int cmd_oracle(const CommonOpts& o, std::ostream& out) {
  auto p = load(o);
  oracle::OracleConfig cfg;
  cfg.seed = o.seed;
  cfg.starts = o.starts;
  auto sols = oracle::multistart_solve(p, cfg);
  json report;
  report["count"] = sols.size();
  std::vector<SolutionRecord> recs;
  for (const auto& s : sols) recs.push_back({s.x, s.residual, 1});
  report["solutions"] = solutions_json(recs);
  emit(out, o, report, [&](std::ostream& os) {
    os << "multistart oracle: " << sols.size() << " distinct solutions (seed " << o.seed
       << ", starts " << o.starts << ")\n";
    print_solutions_text(os, recs);
  });
  return sols.empty() ? 2 : 0;
}

int cmd_curve(const CommonOpts& o, std::ostream& out) {
  auto p = load(o);
  double b1, b2, b3, cstar;
  if (!curve_standard_shape(p, b1, b2, b3, cstar))
    throw Unsupported(
        "curve: instance must be two trinomials in three variables in standard form");
  if (o.cstar > 0) cstar = o.cstar;
  auto comps = trinomials::curve_parametrize_d1(b1, b2, b3, cstar, o.samples);

  auto aux = framework::build_aux(p);
  auto lift = [&](double l1, double l2) {
    RealVec y = {l1, 1 - l1, 1, l2, 1 - l2, 1};
    return framework::lift_solution(y, aux, p.params, 1e-7);
  };

  if (o.format == "csv") {
    out << std::setprecision(17);
    out << "component,param1,param2,x1,x2,x3\n";
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
      for (const auto& s : comps[ci].samples) {
        RealVec x = lift(s[0], s[1]);
        out << ci + 1 << "," << s[0] << "," << s[1] << "," << x[0] << "," << x[1] << "," << x[2]
            << "\n";
      }
    return 0;
  }
  json report;
  report["exponents"] = {b1, b2, b3};
  report["cstar"] = cstar;
  report["components"] = comps.size();
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& c : comps) {
      json pts = json::array();
      for (const auto& s : c.samples) {
        RealVec x = lift(s[0], s[1]);
        pts.push_back({{"lambda", {s[0], s[1]}}, {"x", x}});
      }
      arr.push_back(std::move(pts));
    }
    report["samples"] = arr;
    out << report.dump(2) << "\n";
  } else {
    out << "curve components: " << comps.size() << " (cstar = " << cstar << ")\n";
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
      out << "  component " << ci + 1 << ": " << comps[ci].samples.size() << " samples\n";
  }
  return 0;
}

int cmd_examples(const CommonOpts& o, std::ostream& out);

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"positive solutions of parametrized generalized polynomial systems"};
  app.require_subcommand(1);
  CommonOpts o;

  auto add_common = [&](CLI::App* cmd, bool needs_file) {
    if (needs_file) cmd->add_option("file", o.file, "problem JSON document")->required();
    cmd->add_option("--format", o.format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--tol", o.tol, "condition residual tolerance");
    cmd->add_option("--seed", o.seed, "oracle RNG seed");
    cmd->add_option("--starts", o.starts, "oracle start count");
    return cmd;
  };

  auto* c_classify = add_common(app.add_subcommand("classify", "dimensions, dependency, case"), true);
  auto* c_solve = add_common(app.add_subcommand("solve", "solutions or explicit parametrization"), true);
  c_solve->add_option("--lambda", o.lambdas, "barycentric coordinate per two-vertex class");
  c_solve->add_option("--tau", o.taus, "multiplicative coordinate per free direction");
  auto* c_bound = add_common(app.add_subcommand("bound", "solution-count bounds"), true);
  auto* c_certify = add_common(app.add_subcommand("certify", "sign-vector certificates"), true);
  auto* c_oracle = add_common(app.add_subcommand("oracle", "multistart verification"), true);
  auto* c_curve = add_common(app.add_subcommand("curve", "sample the d = 1 solution curve"), true);
  c_curve->add_option("--cstar", o.cstar, "override the condition target c*");
  c_curve->add_option("--samples", o.samples, "samples per component");
  auto* c_examples = add_common(app.add_subcommand("examples", "run the bundled instances"), false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 64;
  }

  try {
    if (c_classify->parsed()) return cmd_classify(o, out);
    if (c_solve->parsed()) return cmd_solve(o, out);
    if (c_bound->parsed()) return cmd_bound(o, out);
    if (c_certify->parsed()) return cmd_certify(o, out);
    if (c_oracle->parsed()) return cmd_oracle(o, out);
    if (c_curve->parsed()) return cmd_curve(o, out);
    if (c_examples->parsed()) return cmd_examples(o, out);
  } catch (const EmptyInterior& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NoSolutions& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}

namespace {

int cmd_examples(const CommonOpts& o, std::ostream& out) {
  (void)o;
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS" : "FAIL") << " " << name << ": " << detail << "\n";
    if (!ok) ++failures;
  };

  {  // two_component: dependency zero, closed-form sample
    auto p = parse_problem(fixture("two_component"));
    auto cl = framework::classify(p);
    check("two_component classify",
          cl.dependency == 0 && cl.dim_difference == 3 &&
              cl.kind == framework::SystemCase::DependencyZeroSubspace,
          "d = 0, dim L = 3, case D0_SUBSPACE");
    auto sp = framework::solution_set_d0(p);
    RealVec x = sp.evaluate({{0.5, 0.5}}, {0.0});
    bool ok = x.size() == 4;
    double expect[4] = {1, 2, 1, 1};
    for (int i = 0; i < 4 && ok; ++i) ok = std::abs(x[i] - expect[i]) <= 1e-9;
    check("two_component sample", ok && framework::residual(p, x) <= 1e-10,
          "lambda = 1/2, tau = 1 lifts to (1, 2, 1, 1)");
    check("two_component uniqueness", !framework::certify_uniqueness(p).certified,
          "one-dimensional polytope: uniqueness not certified, witness emitted");
  }
  {  // trinomial: golden-ratio root, unique existence
    auto p = parse_problem(fixture("trinomial"));
    auto cl = framework::classify(p);
    auto roots = signchar::trinomial_solve(2, 1, 1, 1);
    bool ok = cl.dependency == 1 && roots.size() == 1 &&
              std::abs(roots[0].x - 0.6180339887498949) <= 1e-12;
    check("trinomial solve", ok, "single root (sqrt(5)-1)/2");
    check("trinomial unique existence", framework::certify_unique_existence(p),
          "one solution for every c > 0");
  }
  {  // two_trinomials_3d: curve components and non-decomposability
    auto p = parse_problem(fixture("two_trinomials_3d"));
    auto cl = framework::classify(p);
    check("two_trinomials_3d classify", cl.dependency == 1 && cl.num_classes == 2,
          "d = 1 over two classes");
    bool threw = false;
    try {
      framework::decompose(p);
    } catch (const NotDecomposable&) {
      threw = true;
    }
    check("two_trinomials_3d decompose", threw, "dependency couples the classes");
    auto comps = trinomials::curve_parametrize_d1(1, 2, -2, 2.0, 64);
    check("two_trinomials_3d curve", comps.size() == 2, "two components at cstar = 2");
  }
  {  // segment_bihan: rule of signs attained
    auto p = parse_problem(fixture("segment_bihan"));
    auto sp = trinomials::make_segment_problem(p);
    int bound = trinomials::segment_rule_of_signs(sp);
    auto roots = trinomials::segment_solve(sp);
    oracle::OracleConfig cfg;
    cfg.starts = 1024;
    auto oracle_sols = oracle::multistart_solve(p, cfg);
    check("segment_bihan bound", bound == 2, "1 + sgnvar of partial sums = 2");
    check("segment_bihan counts",
          roots.size() == 2 && oracle_sols.size() == 2,
          "two solutions from the segment solver and the oracle");
  }
  {  // haas_like: five positive solutions
    auto p = parse_problem(fixture("haas_like"));
    auto tp = trinomials::two_trinomial_standardize(p);
    auto roots = trinomials::two_trinomial_solve(tp);
    oracle::OracleConfig cfg;
    auto oracle_sols = oracle::multistart_solve(p, cfg);
    bool res_ok = true;
    for (const auto& r : roots)
      res_ok = res_ok && framework::residual(p, {r.x[0], r.x[1]}) <= 1e-8;
    check("haas_like bound", trinomials::two_trinomial_bound(tp) == 5, "exponent pattern admits 5");
    check("haas_like counts", roots.size() == 5 && oracle_sols.size() == 5,
          "five positive solutions from both solvers");
    check("haas_like residuals", res_ok, "all solver residuals at most 1e-8");
  }
  {  // bound table
    long long ts[5] = {3, 4, 5, 6, 10};
    long long expect[5] = {6, 14, 28, 50, 258};
    long long li[5] = {6, 14, 30, 62, 1022};
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
      auto row = trinomials::tnomial_comparison_row(ts[i]);
      ok = ok && row.this_work == Rat(expect[i]) && row.li2003 == Rat(li[i]);
    }
    auto r10 = trinomials::tnomial_comparison_row(10);
    ok = ok && r10.koiran2015 == Rat(2150, 3);
    check("tnomial bound table", ok, "t = 3,4,5,6,10 rows match");
  }

  out << (failures == 0 ? "all bundled examples pass\n" : "bundled example failures\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

}  // namespace posys::io
