#include <doctest.h>

#include <esp2cs/esp2cs.h>

#include <unistd.h>

#include <filesystem>
#include <string>

namespace {

struct Owned {
  char* p = nullptr;
  ~Owned() { esp2cs_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

std::filesystem::path scratch() {
  auto d = std::filesystem::temp_directory_path() / ("esp2cs-capi-" + std::to_string(::getpid()));
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("keys, genesis and an in-process node") {
  auto dir = scratch();
  auto auth = (dir / "auth.json").string();
  auto user = (dir / "user.json").string();
  Owned a1, a2;
  REQUIRE(esp2cs_keygen(auth.c_str(), "capi/auth", &a1.p) == ESP2CS_OK);
  REQUIRE(esp2cs_keygen(user.c_str(), nullptr, &a2.p) == ESP2CS_OK);
  CHECK(a1.str().size() == 40);
  Owned addr, pk;
  REQUIRE(esp2cs_key_inspect(auth.c_str(), &addr.p, &pk.p) == ESP2CS_OK);
  CHECK(addr.str() == a1.str());
  CHECK(pk.str().size() == 64);

  auto genesis = (dir / "genesis.yaml").string();
  const char* auths[] = {auth.c_str()};
  std::string acct = user + "=5000";
  const char* accts[] = {acct.c_str()};
  REQUIRE(esp2cs_genesis_write(genesis.c_str(), 1'700'000'000, 5, auths, 1, accts, 1, nullptr) == ESP2CS_OK);

  esp2cs_node_options opts{};
  opts.genesis_path = genesis.c_str();
  opts.key_path = auth.c_str();
  esp2cs_node* node = nullptr;
  REQUIRE(esp2cs_node_open(&opts, &node) == ESP2CS_OK);
  int status = 0;
  Owned body;
  auto account_path = "/v1/accounts/" + a2.str();
  REQUIRE(esp2cs_node_request(node, "GET", account_path.c_str(), nullptr, nullptr, &status, &body.p) == ESP2CS_OK);
  CHECK(status == 200);
  CHECK(body.str().find("\"5000\"") != std::string::npos);
  Owned hdrs;
  REQUIRE(esp2cs_node_request(node, "GET", "/v1/chain/headers", "from=0&limit=1", nullptr, &status, &hdrs.p) ==
          ESP2CS_OK);
  CHECK(hdrs.str().find("\"height\":0") != std::string::npos);
  esp2cs_node_close(node);
  std::filesystem::remove_all(dir);
}

TEST_CASE("errors map to status codes with a message") {
  Owned out;
  CHECK(esp2cs_key_inspect("/nonexistent/key.json", &out.p, nullptr) != ESP2CS_OK);
  CHECK(std::string(esp2cs_last_error()).size() > 0);
  CHECK(esp2cs_keygen(nullptr, nullptr, &out.p) == ESP2CS_ERR_ARGUMENT);
  CHECK(std::string(esp2cs_status_name(ESP2CS_ERR_CONFIG)) == "configuration error");
  esp2cs_node_options opts{};
  esp2cs_node* node = nullptr;
  CHECK(esp2cs_node_open(&opts, &node) == ESP2CS_ERR_ARGUMENT);
  CHECK(node == nullptr);
  Owned report;
  CHECK(esp2cs_sim_run("/nonexistent.yaml", 0, 0, ESP2CS_FORMAT_TEXT, &report.p, nullptr) == ESP2CS_ERR_CONFIG);
}

TEST_CASE("simulation and bench through the C interface") {
  auto path = std::string(ESP2CS_SOURCE_DIR) + "/scenarios/lifecycle.yaml";
  Owned a, b;
  esp2cs_sim_summary sa{}, sb{};
  REQUIRE(esp2cs_sim_run(path.c_str(), 0, 0, ESP2CS_FORMAT_JSON, &a.p, &sa) == ESP2CS_OK);
  REQUIRE(esp2cs_sim_run(path.c_str(), 0, 0, ESP2CS_FORMAT_JSON, &b.p, &sb) == ESP2CS_OK);
  CHECK(a.str() == b.str());
  CHECK(sa.converged == 1);
  CHECK(sa.conservation_ok == 1);
  CHECK(sa.receipts == 4);
  Owned c;
  REQUIRE(esp2cs_sim_run(path.c_str(), 1, 99, ESP2CS_FORMAT_JSON, &c.p, nullptr) == ESP2CS_OK);
  CHECK(c.str().find("\"seed\": 99") != std::string::npos);

  Owned bench;
  int ok = 0;
  REQUIRE(esp2cs_bench_gas(ESP2CS_FORMAT_JSON, &bench.p, &ok) == ESP2CS_OK);
  CHECK(ok == 1);
  CHECK(bench.str().find("publishMessage") != std::string::npos);
}

}  // TEST_SUITE
