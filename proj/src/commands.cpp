#include "dvint/commands.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "dvint/errors.hpp"
#include "dvint/integrals.hpp"
#include "dvint/numeric.hpp"
#include "dvint/parser.hpp"

namespace dvint {

using nlohmann::json;

namespace {

const std::set<std::string> kVerbs = {"compile",      "verify-section", "verify-integral", "search",
                                      "independence", "fiber-degree",   "report",          "simulate"};

// Failure of a command-line argument rather than of the problem file.
struct FlagError {
  std::string flag;
  std::string text;
  Error error;
};

std::string strip_line_prefix(const std::string& msg) {
  static const std::regex prefix(R"(^line \d+: )");
  return std::regex_replace(msg, prefix, "", std::regex_constants::format_first_only);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json names(const VariableRegistry& reg, const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (auto i : idx) out.push_back(reg[i].name);
  return out;
}

json poly_list(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

json system_json(const ProductSystem& sys) {
  const auto& reg = *sys.registry();
  const DVariety& v = sys.system.variety;
  json vars = json::array();
  for (const auto& var : reg.variables()) vars.push_back({{"name", var.name}, {"kind", var_kind_name(var.kind)}});
  json section = json::array();
  for (auto i : v.state_variables())
    section.push_back({{"variable", reg[i].name}, {"derivative", to_string(v.section[i])}});
  return {{"variables", vars},
          {"time", reg[sys.system.time].name},
          {"ideal", poly_list(v.ideal.generators)},
          {"section", section},
          {"excluded_locus", poly_list(v.excluded_locus)},
          {"w_vars", names(reg, sys.w_vars)},
          {"v_vars", names(reg, sys.v_vars)},
          {"irreducible", v.irreducible}};
}

json integral_json(const FirstIntegral& fi) {
  return {{"h", to_string(fi.h)},
          {"verified", fi.verified},
          {"residual", to_string(fi.residual)},
          {"provenance", provenance_name(fi.provenance)},
          {"excluded_locus", poly_list(fi.excluded_locus)}};
}

json independence_json(const IndependenceReport& r) {
  return {{"count", r.count},
          {"rank", r.rank},
          {"base_rank", r.base_rank},
          {"rank_v", r.rank_v},
          {"base_rank_v", r.base_rank_v},
          {"independent", r.independent},
          {"w_independent", r.w_independent}};
}

json fiber_json(const FiberDegree& d) { return d.finite ? json(d.degree) : json("infinite"); }

class Runner {
 public:
  explicit Runner(const CommandRequest& req) : req_(req) {}

  int run(json& doc) {
    const std::string text = req_.input_text ? *req_.input_text : read_file(req_.input_path);
    spec_ = parse_problem_file(text);
    sys_ = compile_problem(spec_);
    const std::string& verb = req_.verb;
    if (verb == "compile") return compile(doc);
    if (verb == "verify-section") return verify_section_cmd(doc);
    if (verb == "verify-integral") return verify_integral(doc);
    if (verb == "search") return search(doc);
    if (verb == "independence") return independence(doc);
    if (verb == "fiber-degree") return fiber_degree(doc);
    if (verb == "report") return report(doc);
    return simulate(doc);
  }

 private:
  RationalFunction parse_flag(const std::string& flag, const std::string& text) const {
    try {
      return parse_expression(text, sys_.registry());
    } catch (const Error& e) {
      throw FlagError{flag, text, e};
    }
  }

  Polynomial parse_poly_flag(const std::string& flag, const std::string& text) const {
    RationalFunction f = parse_flag(flag, text);
    if (!f.is_polynomial()) throw FlagError{flag, text, Error(ErrorCode::InvalidArgument, "expected a polynomial")};
    return f.numerator() * BigRational(1 / f.denominator().constant_term());
  }

  // --h values, else the problem file's `integrals:` line.
  std::vector<RationalFunction> integrals(bool fallback_to_file) const {
    std::vector<RationalFunction> out;
    for (const auto& h : req_.integrals) out.push_back(parse_flag("--h", h));
    if (out.empty() && fallback_to_file)
      for (const auto& h : spec_.candidate_integrals) out.push_back(parse_flag("integrals", h));
    return out;
  }

  static json strings(const std::vector<RationalFunction>& hs) {
    json out = json::array();
    for (const auto& h : hs) out.push_back(to_string(h));
    return out;
  }

  int compile(json& doc) {
    doc["mode"] = problem_mode_name(spec_.mode);
    if (spec_.mode != ProblemMode::DVariety) doc["order"] = spec_.ode_order;
    doc["system"] = system_json(sys_);
    doc["canonical"] = emit_problem(spec_);
    return kExitOk;
  }

  int verify_section_cmd(json& doc) {
    doc["system"] = system_json(sys_);
    SectionReport r = verify_section(sys_.system.variety);
    json res = json::array();
    for (const auto& e : r.residuals)
      res.push_back({{"generator", to_string(e.generator)}, {"residual", to_string(e.residual)}});
    doc["section_check"] = {{"pass", r.pass}, {"residuals", res}};
    return r.pass ? kExitOk : kExitNegative;
  }

  int verify_integral(json& doc) {
    auto hs = integrals(true);
    if (hs.empty()) throw Error(ErrorCode::InvalidArgument, "no integral given; use --h");
    json out = json::array();
    bool all = true;
    for (const auto& h : hs) {
      FirstIntegral fi = verify_first_integral(h, sys_);
      all = all && fi.verified;
      out.push_back(integral_json(fi));
    }
    doc["integrals"] = out;
    return all ? kExitOk : kExitNegative;
  }

  int search(json& doc) {
    if (req_.degree < 0) throw Error(ErrorCode::InvalidArgument, "--degree must be nonnegative");
    const Fibration sys = req_.ambient ? ambient(sys_.system) : sys_.system;
    doc["degree"] = req_.degree;
    doc["ambient"] = req_.ambient;
    std::vector<FirstIntegral> found;
    json dens = json::array();
    if (req_.denominators.empty()) {
      found = search_polynomial_integrals(sys, req_.degree);
    } else {
      for (const auto& q : req_.denominators) {
        Polynomial p = parse_poly_flag("--denominator", q);
        dens.push_back(to_string(p));
        for (auto& fi : search_rational_integrals(sys, p, req_.degree))
          if (std::none_of(found.begin(), found.end(), [&](const FirstIntegral& f) { return f.h == fi.h; }))
            found.push_back(std::move(fi));
      }
    }
    doc["denominators"] = dens;
    json out = json::array();
    for (const auto& fi : found) out.push_back(integral_json(fi));
    doc["integrals"] = out;
    return kExitOk;
  }

  int independence(json& doc) {
    auto hs = integrals(true);
    doc["integrals"] = strings(hs);
    IndependenceReport r = independence_test(hs, sys_);
    doc["independence"] = independence_json(r);
    return r.independent && r.w_independent ? kExitOk : kExitNegative;
  }

  int fiber_degree(json& doc) {
    auto hs = integrals(true);
    doc["integrals"] = strings(hs);
    doc["v_dimension"] = ideal_dimension(sys_.ideal(), sys_.v_vars);
    FiberDegree d = generic_fiber_degree(hs, sys_);
    doc["fiber_degree"] = fiber_json(d);
    return d.finite ? kExitOk : kExitNegative;
  }

  int report(json& doc) {
    ReportOptions o;
    o.degree = req_.degree;
    o.darboux_degree = req_.darboux_degree;
    if (o.degree < 0) throw Error(ErrorCode::InvalidArgument, "--degree must be nonnegative");
    for (const auto& q : req_.denominators) o.denominators.push_back(parse_poly_flag("--denominator", q));
    o.user_integrals = integrals(false);
    IntegrabilityReport r = integrability_report(sys_, o);
    doc["degree_bound"] = r.degree_bound;
    doc["v_dimension"] = r.v_dimension;
    json user = json::array(), found = json::array(), selected = json::array(), darboux = json::array();
    for (const auto& fi : r.user) user.push_back(integral_json(fi));
    for (const auto& fi : r.found) found.push_back(integral_json(fi));
    for (auto i : r.selected) selected.push_back(to_string(r.found[i].h));
    for (const auto& d : r.darboux)
      darboux.push_back({{"polynomial", to_string(d.d)}, {"cofactor", to_string(d.cofactor)}});
    doc["user_integrals"] = user;
    doc["integrals_found"] = found;
    doc["selected"] = selected;
    doc["denominators_tried"] = poly_list(r.denominators_tried);
    doc["darboux"] = darboux;
    doc["darboux_complete"] = r.darboux_complete;
    doc["independence"] = independence_json(r.independence);
    doc["fiber_degree"] = r.fiber_degree ? fiber_json(*r.fiber_degree) : json("unknown");
    doc["verdict"] = r.verdict_label();
    doc["excluded_locus"] = poly_list(r.excluded_locus);
    return r.verdict == Verdict::NotDetermined ? kExitNegative : kExitOk;
  }

  int simulate(json& doc) {
    if (req_.init.empty()) throw Error(ErrorCode::InvalidArgument, "simulate needs --init t0,v1,...");
    if (!req_.t_end) throw Error(ErrorCode::InvalidArgument, "simulate needs --t-end");
    auto hs = integrals(true);
    const double t0 = req_.init.front();
    std::vector<double> v0(req_.init.begin() + 1, req_.init.end());
    doc["t0"] = t0;
    doc["t_end"] = *req_.t_end;
    doc["step"] = req_.step;
    doc["method"] = "rk4";
    doc["tolerance"] = req_.tolerance;
    Trajectory traj;
    try {
      traj = integrate_flow(sys_.system, t0, v0, *req_.t_end, req_.step);
    } catch (const PoleEncountered& e) {
      doc["pole"] = {{"last_good_t", e.last_good_t()}, {"message", e.what()}};
      return kExitNegative;
    }
    doc["samples"] = traj.size();
    json state;
    const auto& last = traj.values.back();
    for (std::size_t j = 0; j < traj.state.size(); ++j) state[(*traj.registry)[traj.state[j]].name] = last[j];
    doc["final"] = {{"t", traj.times.back()}, {"state", state}};
    json checks = json::array();
    bool all = true;
    for (const auto& h : hs) {
      Constancy c = check_constancy(h, traj, req_.tolerance);
      all = all && c.pass;
      checks.push_back({{"h", to_string(h)}, {"value", c.value}, {"max_drift", c.max_drift}, {"pass", c.pass}});
    }
    doc["constancy"] = checks;
    if (!req_.csv_path.empty()) {
      std::ofstream out(req_.csv_path);
      if (!out) throw Error(ErrorCode::Io, "cannot write '" + req_.csv_path + "'");
      write_csv(out, traj);
      doc["csv"] = req_.csv_path;
    }
    return all ? kExitOk : kExitNegative;
  }

  const CommandRequest& req_;
  ProblemSpec spec_;
  ProductSystem sys_;
};

void render(std::ostringstream& out, const json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (auto it = value.begin(); it != value.end(); ++it) {
    const json& v = it.value();
    if (v.is_object()) {
      out << pad << it.key() << ":\n";
      render(out, v, indent + 1);
    } else if (v.is_array()) {
      if (v.empty()) {
        out << pad << it.key() << ": (none)\n";
        continue;
      }
      out << pad << it.key() << ":\n";
      for (const auto& item : v) {
        if (item.is_object()) {
          std::ostringstream sub;
          render(sub, item, 0);
          std::istringstream lines(sub.str());
          bool first = true;
          for (std::string line; std::getline(lines, line); first = false)
            out << pad << (first ? "  - " : "    ") << line << '\n';
        } else {
          out << pad << "  - " << scalar(item) << '\n';
        }
      }
    } else if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
      out << pad << it.key() << ":\n";
      std::istringstream lines(v.get<std::string>());
      for (std::string line; std::getline(lines, line);) out << pad << "  | " << line << '\n';
    } else {
      out << pad << it.key() << ": " << scalar(v) << '\n';
    }
  }
}

}  // namespace

bool is_known_verb(const std::string& verb) { return kVerbs.count(verb) > 0; }

std::string render_text(const json& doc) {
  std::ostringstream out;
  render(out, doc, 0);
  return out.str();
}

CommandResult execute_command(const CommandRequest& req) {
  CommandResult res;
  json doc = {{"schema", 1}, {"verb", req.verb}, {"input", req.input_path}};
  std::ostringstream diag;
  const std::string where = req.input_path.empty() ? "<input>" : req.input_path;
  try {
    if (!is_known_verb(req.verb)) throw Error(ErrorCode::InvalidArgument, "unknown verb '" + req.verb + "'");
    if (req.format != "text" && req.format != "json")
      throw Error(ErrorCode::InvalidArgument, "--format must be text or json");
    Runner runner(req);
    res.exit_code = runner.run(doc);
  } catch (const FlagError& f) {
    res.exit_code = kExitUsage;
    std::string loc = f.flag;
    if (auto p = f.error.position()) loc += ":1:" + std::to_string(*p + 1);
    diag << loc << ": error: " << f.error.what() << " in '" << f.text << "'\n";
    doc["error"] = {{"code", error_code_name(f.error.code())}, {"message", f.error.what()}, {"flag", f.flag}};
  } catch (const Error& e) {
    res.exit_code = kExitUsage;
    std::string loc = where;
    json err = {{"code", error_code_name(e.code())}, {"message", strip_line_prefix(e.what())}};
    if (auto p = e.position()) {
      std::string text;
      try {
        text = req.input_text ? *req.input_text : read_file(req.input_path);
      } catch (const Error&) {
      }
      if (*p <= text.size()) {
        auto [line, col] = line_column(text, *p);
        loc += ":" + std::to_string(line) + ":" + std::to_string(col);
        err["line"] = line;
        err["column"] = col;
      }
    }
    diag << loc << ": error: " << strip_line_prefix(e.what()) << '\n';
    doc["error"] = err;
  }
  doc["exit_code"] = res.exit_code;
  doc["status"] = res.exit_code == kExitOk ? "ok" : res.exit_code == kExitNegative ? "negative" : "error";
  res.document = doc;
  res.output = req.format == "json" ? doc.dump(2) + "\n" : render_text(doc);
  res.diagnostics = diag.str();
  return res;
}

}  // namespace dvint
