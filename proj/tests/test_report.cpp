#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "sspd/report.hpp"

using namespace sspd;

namespace {

RunReport sample_report() {
  RunReport r;
  r.generator = "uniform";
  r.n = 100;
  r.dim = 2;
  r.seed = 7;
  r.construction = "sspd-opt";
  r.eps = 0.5;
  r.pair_count = 1234;
  r.weight = 5678;
  r.coverage_ok = true;
  r.separation_ok = false;
  r.stretch = 1.25;
  r.duration_ms = 3.5;
  return r;
}

}  // namespace

TEST_CASE("report: jsonl carries values and nulls for absent metrics") {
  std::ostringstream out;
  write_jsonl(out, {sample_report()});
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK_FALSE(std::getline(in, line));  // exactly one line per report

  std::istringstream again(out.str());
  std::getline(again, line);
  nlohmann::json j = nlohmann::json::parse(line);
  CHECK(j["generator"] == "uniform");
  CHECK(j["n"] == 100);
  CHECK(j["pair_count"] == 1234);
  CHECK(j["coverage_ok"] == true);
  CHECK(j["separation_ok"] == false);
  CHECK(j["stretch"] == 1.25);
  CHECK(j["edges"].is_null());       // never measured
  CHECK(j["psi"].is_null());
  CHECK(j["note"] == "");
}

TEST_CASE("report: empty run list gives an empty document") {
  std::ostringstream out;
  write_jsonl(out, {});
  CHECK(out.str().empty());
}

TEST_CASE("report: csv header is stable and absent cells stay empty") {
  std::ostringstream out;
  write_csv(out, {sample_report()});
  std::istringstream in(out.str());
  std::string header, row;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row));
  CHECK(header ==
        "generator,input_file,n,dim,seed,construction,eps,psi,rho,t,pair_count,weight,"
        "max_pairs_per_point,edges,max_degree,separator_size,side_a,side_b,stretch,"
        "mean_gap_proxy,total_weight,coverage_ok,separation_ok,stretch_ok,separator_ok,"
        "note,duration_ms");
  CHECK(row.find("uniform,,100,2,7,sspd-opt,0.5,,,") == 0);  // psi/rho/t all empty
  CHECK(row.find(",1,0,,,") != std::string::npos);           // bools as 1/0, absent blank
}

TEST_CASE("report: csv escapes commas and quotes in notes") {
  RunReport r = sample_report();
  r.note = "bad, \"quoted\" cell";
  std::ostringstream out;
  write_csv(out, {r});
  CHECK(out.str().find("\"bad, \"\"quoted\"\" cell\"") != std::string::npos);
}

TEST_CASE("report: csv with no rows still prints the header") {
  std::ostringstream out;
  write_csv(out, {});
  std::string s = out.str();
  CHECK(s.rfind("generator,", 0) == 0);
  CHECK(s.find('\n') == s.size() - 1);  // header line only
}
