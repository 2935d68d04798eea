#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "sgdf/good_function.hpp"
#include "sgdf/graph.hpp"
#include "sgdf/io.hpp"

using namespace sgdf;

TEST_CASE("format_double is deterministic and faithful") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  const double x = 0.1 + 0.2;
  CHECK(format_double(x) == format_double(x));
  CHECK(std::stod(format_double(x)) == x);  // 17 digits round-trip
}

TEST_CASE("csv writer emits the pinned headers") {
  const RowTable g = graph_table(build_graph(1));
  std::ostringstream out;
  write_csv(out, g);
  const std::string text = out.str();
  CHECK(text.rfind("level,w1,w2,kind,shared_a_num,shared_a_den,shared_b_num,shared_b_den\n",
                   0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);  // header + 3 edges

  EnergyProfile profile;
  profile.A = {0.32};
  profile.D = {8.0 / 15.0};
  std::ostringstream pout;
  write_csv(pout, profile_table(profile));
  CHECK(pout.str().rfind("n,A_n,D_n\n1,", 0) == 0);
}

TEST_CASE("json mirrors csv rows as an array of objects") {
  const RowTable g = graph_table(build_graph(1));
  std::ostringstream out;
  write_json(out, g);
  const auto parsed = nlohmann::json::parse(out.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0]["w1"] == "0");
  CHECK(parsed[0]["w2"] == "1");
  CHECK(parsed[0]["kind"] == "I");
  CHECK(parsed[0]["level"] == 1);
  CHECK(parsed[0]["shared_a_num"] == 1);
  CHECK(parsed[0]["shared_a_den"] == 2);
}

TEST_CASE("audit and probe tables carry their pinned columns") {
  std::vector<AuditRow> rows = {{"demo", 3, 1.0, 2.0, 0.5, true}};
  std::ostringstream out;
  write_csv(out, audit_table(rows));
  CHECK(out.str() == "check,n,lhs,rhs,ratio,pass\ndemo,3,1,2,0.5,true\n");

  std::vector<ProbeRow> probe(1);
  probe[0].beta = 2.0;
  probe[0].eps = 0.25;
  probe[0].pass = true;
  std::ostringstream pout;
  write_csv(pout, probe_table(probe));
  CHECK(pout.str().rfind("beta,eps,value,value_times_log2,supD,verdict\n", 0) == 0);
  CHECK(pout.str().find(",pass\n") != std::string::npos);
}
