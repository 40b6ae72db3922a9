#include <doctest.h>

#include <algorithm>
#include <json.hpp>
#include <random>

#include "uaforge/error.hpp"
#include "uaforge/harness.hpp"

using namespace uaforge;
namespace h = uaforge::harness;

TEST_CASE("every registered claim passes at n = 3 with instance counts") {
  auto results = h::run_all();
  REQUIRE(results.size() == h::registry().size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    CAPTURE(results[i].id);
    CAPTURE(results[i].evidence);
    CHECK(results[i].id.rfind(h::registry()[i].id, 0) == 0);
    CHECK(results[i].status == h::Status::Pass);
    CHECK(results[i].instances > 0);
    CHECK_FALSE(results[i].paper_location.empty());
  }
}

TEST_CASE("shuffled single runs reproduce run_all") {
  auto                     all = h::run_all();
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::mt19937 rng(71);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i : order) {
    auto r = h::run_claim(all[i].id);
    CHECK(r.status == all[i].status);
    CHECK(r.evidence == all[i].evidence);
    CHECK(r.instances == all[i].instances);
  }
  auto again = h::run_all();
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(again[i].evidence == all[i].evidence);
  }
}

TEST_CASE("claim ids, filters and the size parameter") {
  CHECK_THROWS_AS(h::run_claim("S9.NOPE"), Error);
  CHECK_THROWS_AS(h::run_claim("S3.FKN", 5), GuardError);
  CHECK_THROWS_AS(h::run_claim("S3.FKN?n=2"), GuardError);
  CHECK_THROWS_AS(h::run_claim("S3.FKN?n=x"), Error);
  auto r = h::run_claim("S3.AUT-SIGMA?n=4");
  CHECK(r.status == h::Status::Pass);
  CHECK(r.id == "S3.AUT-SIGMA?n=4");
  auto s2 = h::run_all("S2.");
  CHECK(s2.size() == 10);
  for (auto const& c : s2) {
    CHECK(c.id.rfind("S2.", 0) == 0);
  }
}

TEST_CASE("reports") {
  auto results = h::run_all("S2.SG");
  auto j       = nlohmann::json::parse(h::report_json(results));
  CHECK(j["summary"]["pass"] == 1);
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["claims"][0]["id"] == "S2.SG-EMPTY");
  CHECK(j["claims"][0]["status"] == "pass");
  auto text = h::report_text(results);
  CHECK(text.find("PASS S2.SG-EMPTY") != std::string::npos);
  CHECK(text.find("1/1 claims pass") != std::string::npos);
}
