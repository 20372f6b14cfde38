#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "dvint/commands.hpp"
#include "support.hpp"

using namespace dvint;

namespace {

CommandRequest request(const std::string& verb, const std::string& file) {
  CommandRequest r;
  r.verb = verb;
  r.input_path = std::string(DVINT_PROBLEMS_DIR) + "/" + file;
  return r;
}

CommandResult run(CommandRequest r, const std::string& format = "json") {
  r.format = format;
  return execute_command(r);
}

}  // namespace

TEST_SUITE("commands") {
  TEST_CASE("verify-integral on a coordinate function") {
    auto r = request("verify-integral", "painleve1.dv");
    r.integrals = {"y1"};
    auto res = run(r);
    CHECK(res.exit_code == kExitNegative);
    CHECK(res.document["status"] == "negative");
    CHECK(res.document["integrals"][0]["residual"] == "y2");
    CHECK(res.document["integrals"][0]["verified"] == false);
  }

  TEST_CASE("verify-integral falls back to the file's integrals") {
    auto res = run(request("verify-integral", "linear.dv"));
    CHECK(res.exit_code == kExitOk);
    CHECK(res.document["integrals"].size() == 2);
  }

  TEST_CASE("report on the linear example") {
    auto r = request("report", "linear.dv");
    r.degree = 2;
    auto res = run(r);
    CHECK(res.exit_code == kExitOk);
    CHECK(res.document["verdict"] == "internal");
    CHECK(res.document["fiber_degree"] == 1);
    CHECK(res.document["selected"].size() == 2);
  }

  TEST_CASE("report verdicts") {
    auto cubic = request("report", "cubic.dv");
    cubic.degree = 3;
    cubic.denominators = {"y^2"};
    auto res = run(cubic);
    CHECK(res.exit_code == kExitOk);
    CHECK(res.document["verdict"] == "almost_internal");
    CHECK(res.document["fiber_degree"] == 2);

    auto p1 = request("report", "painleve1.dv");
    p1.degree = 2;
    auto neg = run(p1);
    CHECK(neg.exit_code == kExitNegative);
    CHECK(neg.document["verdict"] == "not_determined_at_degree_2");
  }

  TEST_CASE("search with a denominator") {
    auto r = request("search", "cubic.dv");
    r.degree = 3;
    r.denominators = {"y^2"};
    auto res = run(r);
    CHECK(res.exit_code == kExitOk);
    bool found = false;
    for (const auto& fi : res.document["integrals"]) found = found || fi["h"] == "t - 1/y^2";
    CHECK(found);
  }

  TEST_CASE("compile and verify-section") {
    auto c = run(request("compile", "elliptic.dv"));
    CHECK(c.exit_code == kExitOk);
    CHECK(c.document["mode"] == "implicit-ode");
    CHECK(c.document["system"]["ideal"].size() == 1);
    auto v = run(request("verify-section", "elliptic.dv"));
    CHECK(v.exit_code == kExitOk);
    CHECK(v.document["section_check"]["pass"] == true);
  }

  TEST_CASE("independence and fiber-degree") {
    auto ind = run(request("independence", "linear.dv"));
    CHECK(ind.exit_code == kExitOk);
    CHECK(ind.document["independence"]["w_independent"] == true);
    auto dep = request("independence", "linear.dv");
    dep.integrals = {"(y' - 2*y)/a", "(y' - 2*y)^2/a^2"};
    auto neg = run(dep);
    CHECK(neg.exit_code == kExitNegative);
    CHECK(neg.document["independence"]["independent"] == false);
    auto fd = run(request("fiber-degree", "linear.dv"));
    CHECK(fd.exit_code == kExitOk);
    CHECK(fd.document["fiber_degree"] == 1);
  }

  TEST_CASE("simulate") {
    auto r = request("simulate", "cubic.dv");
    r.init = {5.0, 0.5};
    r.t_end = 10.0;
    r.integrals = {"t - 1/y^2", "y"};
    auto res = run(r);
    CHECK(res.exit_code == kExitNegative);  // y is not constant
    CHECK(res.document["constancy"][0]["pass"] == true);
    CHECK(res.document["constancy"][1]["pass"] == false);
    const double y = res.document["final"]["state"]["y"];
    CHECK(std::fabs(y - 1.0 / 3.0) < 1e-8);

    r.integrals = {"t - 1/y^2"};
    r.csv_path = "commands_cubic.csv";
    auto ok = run(r);
    CHECK(ok.exit_code == kExitOk);
    std::ifstream csv(r.csv_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,y");
    std::remove(r.csv_path.c_str());

    auto pole = dvtest::read_problem("cubic.dv");
    CommandRequest p;
    p.verb = "simulate";
    p.input_path = "pole.dv";
    p.input_text = "ode: y' = -1/y\n";
    p.init = {0.0, 1.0};
    p.t_end = 1.0;
    auto pr = run(p);
    CHECK(pr.exit_code == kExitNegative);
    CHECK(pr.document.contains("pole"));
  }

  TEST_CASE("errors carry positions") {
    CommandRequest r;
    r.verb = "compile";
    r.input_path = "bad.dv";
    r.input_text = "# header\node: y' = y +\n";
    auto res = run(r, "text");
    CHECK(res.exit_code == kExitUsage);
    CHECK(res.diagnostics.rfind("bad.dv:2:", 0) == 0);
    CHECK(res.document["error"]["line"] == 2);
    CHECK(res.document["error"]["code"] == "SyntaxError");

    r.input_text = "ode: y' = z\n";
    auto unk = run(r);
    CHECK(unk.exit_code == kExitUsage);
    CHECK(unk.document["error"]["code"] == "UnknownVariable");
    CHECK(unk.document["error"]["column"] == 11);

    auto bad_flag = request("verify-integral", "cubic.dv");
    bad_flag.integrals = {"t +"};
    auto fl = run(bad_flag);
    CHECK(fl.exit_code == kExitUsage);
    CHECK(fl.document["error"]["flag"] == "--h");

    auto missing = run(request("compile", "does-not-exist.dv"));
    CHECK(missing.exit_code == kExitUsage);
    CHECK(missing.document["error"]["code"] == "IoError");

    CommandRequest verb;
    verb.verb = "frobnicate";
    verb.input_path = "x.dv";
    CHECK(run(verb).exit_code == kExitUsage);
  }

  TEST_CASE("output is deterministic and text agrees with json") {
    for (const char* file : {"linear.dv", "cubic.dv", "elliptic.dv", "painleve1.dv"}) {
      CAPTURE(file);
      auto r = request("report", file);
      r.degree = 2;
      auto a = run(r, "text");
      auto b = run(r, "text");
      CHECK(a.output == b.output);
      auto j1 = run(r, "json");
      auto j2 = run(r, "json");
      CHECK(j1.output == j2.output);
      CHECK(a.exit_code == j1.exit_code);
      const std::string verdict = j1.document["verdict"];
      CHECK(a.output.find("verdict: " + verdict + "\n") != std::string::npos);
      CHECK(nlohmann::json::parse(j1.output) == j1.document);
    }
  }
}
