#include "doctest.h"

#include "negcone/negcone.h"

#include "json.hpp"

#include <cstring>
#include <string>

namespace {

struct Run {
  negcone_status status;
  nlohmann::json artifact;
  std::string summary;
};

Run run(const char* command, const char* space, std::initializer_list<std::pair<const char*, const char*>> opts) {
  negcone_config* cfg = nullptr;
  REQUIRE(negcone_config_create(command, space, &cfg) == NEGCONE_OK);
  for (const auto& [k, v] : opts) REQUIRE(negcone_config_set(cfg, k, v) == NEGCONE_OK);
  negcone_result* res = nullptr;
  Run out;
  out.status = negcone_run(cfg, &res);
  REQUIRE(res != nullptr);
  out.artifact = nlohmann::json::parse(negcone_result_json(res));
  out.summary = negcone_result_summary(res);
  negcone_result_destroy(res);
  negcone_config_destroy(cfg);
  return out;
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("space handle") {
    negcone_space* sp = nullptr;
    REQUIRE(negcone_space_create("m06", &sp) == NEGCONE_OK);
    size_t curves = 0, divisors = 0, rank = 0;
    CHECK(negcone_space_counts(sp, &curves, &divisors, &rank) == NEGCONE_OK);
    CHECK(curves == 95);
    CHECK(divisors == 40);
    CHECK(rank == 16);
    const char* name = nullptr;
    CHECK(negcone_space_divisor_name(sp, 0, &name) == NEGCONE_OK);
    CHECK(std::strlen(name) > 0);
    CHECK(negcone_space_curve_name(sp, 1000, &name) == NEGCONE_INVALID_ARGUMENT);
    char buf[32];
    CHECK(negcone_pair(sp, "2H-E1", "l-e1", buf, sizeof buf) == NEGCONE_OK);
    CHECK(std::string(buf) == "1");
    CHECK(negcone_pair(sp, "2H-E9", "l", buf, sizeof buf) == NEGCONE_INVALID_ARGUMENT);
    CHECK(std::strlen(negcone_last_error()) > 0);
    negcone_space_destroy(sp);
  }

  TEST_CASE("unknown space and key") {
    negcone_space* sp = nullptr;
    CHECK(negcone_space_create("m07", &sp) == NEGCONE_INVALID_ARGUMENT);
    negcone_config* cfg = nullptr;
    REQUIRE(negcone_config_create("verify-eff", "m05", &cfg) == NEGCONE_OK);
    CHECK(negcone_config_set(cfg, "colour", "red") == NEGCONE_INVALID_ARGUMENT);
    CHECK(negcone_config_set(cfg, "max-size", "eight") == NEGCONE_INVALID_ARGUMENT);
    negcone_config_destroy(cfg);
    CHECK(std::string(negcone_version()) == "1.0.0");
  }

  TEST_CASE("five-pointed verification through the C interface") {
    const auto r = run("verify-eff", "m05", {{"route", "both"}, {"criteria", "123"}});
    CHECK(r.status == NEGCONE_OK);
    CHECK(r.artifact["exit_code"] == 0);
    CHECK(r.artifact["routes_agree"] == true);
    CHECK(r.artifact["versions"]["negcone"] == "1.0.0");
  }

  TEST_CASE("certificate round trip and tampering") {
    const auto r = run("verify-eff", "m05", {});
    REQUIRE(r.status == NEGCONE_OK);
    const std::string path = "capi_m05_cert.json";
    {
      FILE* f = std::fopen(path.c_str(), "w");
      REQUIRE(f);
      const std::string text = r.artifact.dump();
      std::fwrite(text.data(), 1, text.size(), f);
      std::fclose(f);
    }
    CHECK(run("check-cert", "m05", {{"input", path.c_str()}}).status == NEGCONE_OK);
    auto bad = r.artifact;
    bad["certificate"]["q_rays"][0][0] = 7;
    {
      FILE* f = std::fopen(path.c_str(), "w");
      const std::string text = bad.dump();
      std::fwrite(text.data(), 1, text.size(), f);
      std::fclose(f);
    }
    CHECK(run("check-cert", "m05", {{"input", path.c_str()}}).status == NEGCONE_VERIFICATION_FAILURE);
    std::remove(path.c_str());
  }

  TEST_CASE("exit codes") {
    CHECK(run("verify-eff", "m06", {{"perturb-curve", "0"}}).status == NEGCONE_CATALOG_VIOLATION);
    CHECK(run("verify-eff", "m05", {{"drop-kv", "0"}}).status == NEGCONE_INVALID_ARGUMENT);
    CHECK(run("face", "m06", {{"curve", "l-e1-e2-e3-e4"}}).status != NEGCONE_OK);
    CHECK(run("oracle", "m06", {{"what", "rays"}, {"max-rays", "100"}}).status == NEGCONE_BUDGET_EXCEEDED);
    CHECK(run("oracle", "m05", {{"what", "sum"}}).status == NEGCONE_OK);
  }
}
