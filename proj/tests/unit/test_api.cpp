#include <doctest.h>

#include "oracles.hpp"
#include "simpeval/api/service.hpp"
#include "simpeval/session.hpp"
#include "simpeval/store/codec.hpp"
#include "simpeval/store/export.hpp"
#include "test_support.hpp"

using namespace simpeval;
using namespace simpeval::testing;

namespace {

const std::string kSource = "The river rose overnight. Residents left their homes. Officials opened a shelter.";

std::string simplify_body(const std::vector<std::string>& prompts, const std::vector<std::string>& models,
                          std::optional<double> lambda = std::nullopt) {
  Json body = {{"source_text", kSource}, {"prompt_ids", prompts}, {"model_ids", models}};
  if (lambda) body["lambda"] = *lambda;
  return body.dump();
}

void check_error(const HttpReply& reply, int status, const std::string& code,
                 const std::optional<std::string>& field = std::nullopt) {
  CHECK(reply.status == status);
  const auto body = reply.json();
  REQUIRE(body.is_object());
  CHECK(body.at("code") == code);
  CHECK(body.at("message").is_string());
  if (field) {
    REQUIRE(body.contains("field_path"));
    CHECK(body.at("field_path") == *field);
  }
}

// Stores a 3x2 single-variant session whose similarity matrix is `rows`,
// aligned at `lambda`.
std::string seed_fixture_session(SessionStore& store, const std::vector<std::vector<double>>& rows,
                                 double lambda) {
  auto s = make_terminal_session({"p1"}, {"m1"}, {});
  s.variants[0].similarity = to_matrix(rows);
  realign_session(s, lambda);
  store.save_session(s);
  return s.session_id;
}

std::size_t link_for(const Json& session, std::size_t simplified_index) {
  for (const auto& l : session.at("variants")[0].at("alignments")) {
    if (l.at("simplified_index") == simplified_index) return l.at("original_index").get<std::size_t>();
  }
  FAIL("link missing");
  return 0;
}

const std::vector<std::vector<double>> kCanonical = {{0.55, 0.10}, {0.20, 0.60}, {0.80, 0.15}};
// Same shape, but the distant decoy still wins at 0.5 and loses at 2.0.
const std::vector<std::vector<double>> kLateFlip = {{0.40, 0.10}, {0.20, 0.60}, {0.95, 0.15}};

}  // namespace

TEST_CASE("simplify runs the matrix and persists the session") {
  ApiHarness api;
  const auto reply = api.post("/api/simplify", simplify_body({"p1"}, {"m1"}));
  REQUIRE(reply.status == 200);
  const auto session = reply.json();
  CHECK(session.at("lambda") == 0.5);
  REQUIRE(session.at("variants").size() == 1);
  const auto& v = session.at("variants")[0];
  CHECK(v.at("status") == "succeeded");
  CHECK(v.at("generated_text") == "Simplified: " + kSource);
  CHECK(v.at("similarity").at("tier") == "semantic");
  CHECK(v.at("alignments").size() == v.at("sentences").size());
  CHECK(v.at("metrics").at("compression_ratio").is_number());
  CHECK(api.llm().calls() == 1);
  REQUIRE(api.llm().requests().size() == 1);
  CHECK(api.llm().requests()[0].model == "m1");

  const std::string id = session.at("session_id");
  const auto loaded = api.get("/api/sessions/" + id);
  REQUIRE(loaded.status == 200);
  CHECK(loaded.json() == session);

  const auto list = api.get("/api/sessions").json();
  REQUIRE(list.size() == 1);
  CHECK(list[0].at("session_id") == id);
}

TEST_CASE("simplify honours a per-request lambda and the full matrix") {
  ApiHarness api;
  const auto reply = api.post("/api/simplify", simplify_body({"p1", "p2"}, {"m1", "m2"}, 2.0));
  REQUIRE(reply.status == 200);
  const auto session = reply.json();
  CHECK(session.at("lambda") == 2.0);
  CHECK(session.at("variants").size() == 4);
  CHECK(api.llm().calls() == 4);
}

TEST_CASE("simplify validation happens before any provider call") {
  ApiHarness api;
  check_error(api.post("/api/simplify", simplify_body({"p1"}, {"nope"})), 404, "UnknownModel", "model_ids[0]");
  check_error(api.post("/api/simplify", simplify_body({"p1", "zz"}, {"m1"})), 404, "UnknownPrompt",
              "prompt_ids[1]");
  check_error(api.post("/api/simplify", simplify_body({"p1"}, {"m1"}, 3.0)), 400, "LambdaOutOfRange", "lambda");
  check_error(api.post("/api/simplify", simplify_body({"p1"}, {"m1"}, -0.1)), 400, "LambdaOutOfRange", "lambda");
  check_error(api.post("/api/simplify", simplify_body({"p1", "p1"}, {"m1"})), 400, "InvalidArgument",
              "prompt_ids[1]");
  check_error(api.post("/api/simplify", simplify_body({}, {"m1"})), 400, "EmptyMatrix");
  check_error(api.post("/api/simplify", Json{{"source_text", "  \n "}, {"prompt_ids", {"p1"}}, {"model_ids", {"m1"}}}.dump()),
              400, "EmptySource");
  check_error(api.post("/api/simplify", Json{{"prompt_ids", {"p1"}}, {"model_ids", {"m1"}}}.dump()), 400,
              "InvalidArgument", "source_text");
  check_error(api.post("/api/simplify", "{not json"), 400, "InvalidArgument");
  check_error(api.post("/api/simplify", Json{{"source_text", kSource}, {"prompt_ids", "p1"}, {"model_ids", {"m1"}}}.dump()),
              400, "InvalidArgument", "prompt_ids");

  CHECK(api.llm().calls() == 0);
  CHECK(api.embedder().calls() == 0);
  CHECK(api.store().list_sessions().empty());
}

TEST_CASE("misconfigured provider maps to 502") {
  auto provider = test_provider_config();
  provider.base_url = "not a url";
  ApiHarness api(provider);
  check_error(api.post("/api/simplify", simplify_body({"p1"}, {"m1"})), 502, "ProviderMisconfigured");
  CHECK(api.llm().calls() == 0);
  CHECK(api.store().list_sessions().empty());
}

TEST_CASE("failed variants come back inside a 200 response") {
  ApiHarness api;
  api.llm().script("m2", {std::chrono::milliseconds(0), {Reply{500}}});
  const auto reply = api.post("/api/simplify", simplify_body({"p1"}, {"m1", "m2"}));
  REQUIRE(reply.status == 200);
  const auto variants = reply.json().at("variants");
  REQUIRE(variants.size() == 2);
  CHECK(variants[0].at("status") == "succeeded");
  CHECK(variants[1].at("status") == "failed");
  CHECK(variants[1].at("failure_reason").is_string());
  CHECK(variants[1].at("metrics").is_null());
  CHECK(variants[1].at("attempts") == 2);
}

TEST_CASE("session lookups") {
  ApiHarness api;
  check_error(api.get("/api/sessions/0123456789abcdef0123456789abcdef"), 404, "NotFound");
  check_error(api.get("/api/sessions/0123456789abcdef0123456789abcdef/export?format=json"), 404, "NotFound");
  CHECK(api.get("/api/sessions").json() == Json::array());
}

TEST_CASE("export formats") {
  ApiHarness api;
  const auto golden = make_golden_session();
  api.store().save_session(golden);
  const std::string base = "/api/sessions/" + golden.session_id + "/export";

  check_error(api.get(base + "?format=xml"), 400, "InvalidArgument", "format");

  const auto csv = api.get(base + "?format=csv");
  REQUIRE(csv.status == 200);
  CHECK(csv.body == export_csv(golden));
  CHECK(csv.headers.at("Content-Type").starts_with("text/csv"));
  CHECK(csv.headers.at("Content-Disposition").find(".csv") != std::string::npos);

  const auto json = api.get(base + "?format=json");
  REQUIRE(json.status == 200);
  CHECK(json.body == export_json(golden));
  CHECK(json.headers.at("Content-Disposition").find(".json") != std::string::npos);
  CHECK(api.get(base).body == json.body);
}

TEST_CASE("pending sessions cannot be exported") {
  ApiHarness api;
  const auto pending = new_session(kSource, {{"p1", "P", "b"}}, {{"m1", "M"}}, 0.5);
  api.store().save_session(pending);
  check_error(api.get("/api/sessions/" + pending.session_id + "/export?format=csv"), 409, "SessionPending");
  check_error(api.get("/api/sessions/" + pending.session_id + "/export?format=json"), 409, "SessionPending");
}

TEST_CASE("settings round trip and validation") {
  ApiHarness api;
  CHECK(settings_from_json(api.get("/api/settings").json()) == harness_settings());

  auto changed = harness_settings();
  changed.criteria.push_back({"simplicity", "Simplicity", 0, 10, 0.1});
  changed.default_lambda = 1.25;
  const Json body = settings_to_json(changed);
  const auto put = api.put("/api/settings", body.dump());
  REQUIRE(put.status == 200);
  CHECK(put.json() == body);
  CHECK(api.get("/api/settings").json() == body);

  auto light = harness_settings();
  light.criteria[0].weight = 0.05;
  check_error(api.put("/api/settings", settings_to_json(light).dump()), 400, "InvalidSettings",
              "criteria[0].weight");
  auto flat = harness_settings();
  flat.criteria[1].scale_min = flat.criteria[1].scale_max;
  check_error(api.put("/api/settings", settings_to_json(flat).dump()), 400, "InvalidSettings",
              "criteria[1].scale_max");
  auto steep = harness_settings();
  steep.default_lambda = 2.5;
  check_error(api.put("/api/settings", settings_to_json(steep).dump()), 400, "LambdaOutOfRange");
  check_error(api.put("/api/settings", "[]"), 400, "InvalidSettings");

  // Rejected writes leave the stored document untouched.
  CHECK(api.get("/api/settings").json() == body);
}

TEST_CASE("annotation batches") {
  ApiHarness api;
  const auto s = make_terminal_session({"p1"}, {"m1", "m2"}, {"p1/m2"});
  api.store().save_session(s);
  const std::string path = "/api/sessions/" + s.session_id + "/annotations";

  const Json good = Json::array({{{"prompt_id", "p1"}, {"model_id", "m1"}, {"criterion_id", "fluency"}, {"raw_score", 4}},
                                 {{"prompt_id", "p1"}, {"model_id", "m1"}, {"criterion_id", "meaning"}, {"raw_score", 2}}});
  const auto ok = api.put(path, good.dump());
  REQUIRE(ok.status == 200);
  const double overall = ok.json().at("variants")[0].at("overall_percentage").get<double>();
  CHECK(overall == doctest::Approx(83.3333).epsilon(1e-4));
  CHECK(ok.json().at("annotations").size() == 2);

  const auto before = api.store().load_session(s.session_id);
  const Json mixed = Json::array({{{"prompt_id", "p1"}, {"model_id", "m1"}, {"criterion_id", "fluency"}, {"raw_score", 1}},
                                  {{"prompt_id", "p1"}, {"model_id", "m1"}, {"criterion_id", "meaning"}, {"raw_score", 3}}});
  check_error(api.put(path, mixed.dump()), 400, "OutOfScale", "[1].raw_score");
  CHECK(api.store().load_session(s.session_id) == before);

  const Json on_failed = Json::array(
      {{{"prompt_id", "p1"}, {"model_id", "m2"}, {"criterion_id", "fluency"}, {"raw_score", 3}}});
  check_error(api.put(path, on_failed.dump()), 400, "VariantFailedOrMissing");
  const Json unknown = Json::array(
      {{{"prompt_id", "p1"}, {"model_id", "m1"}, {"criterion_id", "humour"}, {"raw_score", 3}}});
  check_error(api.put(path, unknown.dump()), 400, "UnknownCriterion");
  const Json untyped = Json::array({{{"prompt_id", "p1"}, {"model_id", "m1"}, {"criterion_id", "fluency"}}});
  check_error(api.put(path, untyped.dump()), 400, "InvalidArgument", "[0].raw_score");
  CHECK(api.store().load_session(s.session_id) == before);

  const auto noop = api.put(path, "[]");
  REQUIRE(noop.status == 200);
  CHECK(api.store().load_session(s.session_id) == before);

  const auto wrapped = api.put(path, Json{{"annotations", Json::array({good[0]})}}.dump());
  CHECK(wrapped.status == 200);

  check_error(api.put("/api/sessions/0123456789abcdef0123456789abcdef/annotations", good.dump()), 404, "NotFound");
  CHECK(api.llm().calls() == 0);
  CHECK(api.embedder().calls() == 0);
}

TEST_CASE("lambda updates realign from stored matrices without provider calls") {
  ApiHarness api;
  const auto canonical = seed_fixture_session(api.store(), kCanonical, 0.0);
  const std::string path = "/api/sessions/" + canonical + "/lambda";
  CHECK(link_for(api.get("/api/sessions/" + canonical).json(), 0) == 2);

  const auto steep = api.put(path, Json{{"lambda", 2.0}}.dump());
  REQUIRE(steep.status == 200);
  CHECK(steep.json().at("lambda") == 2.0);
  CHECK(link_for(steep.json(), 0) == 0);
  CHECK(link_for(api.get("/api/sessions/" + canonical).json(), 0) == 0);

  const auto again = api.put(path, Json{{"lambda", 2.0}}.dump());
  CHECK(again.json().at("variants") == steep.json().at("variants"));

  const auto late = seed_fixture_session(api.store(), kLateFlip, 0.5);
  CHECK(link_for(api.get("/api/sessions/" + late).json(), 0) == 2);
  const auto flipped = api.put("/api/sessions/" + late + "/lambda", Json{{"lambda", 2.0}}.dump());
  REQUIRE(flipped.status == 200);
  CHECK(link_for(flipped.json(), 0) == 0);
  // Penalized score of the new link: 0.40 - 0 * 2.
  CHECK(flipped.json().at("variants")[0].at("alignments")[0].at("score") == doctest::Approx(0.40));

  const auto stored_before = api.store().load_session(canonical);
  check_error(api.put(path, Json{{"lambda", -0.1}}.dump()), 400, "LambdaOutOfRange", "lambda");
  check_error(api.put(path, Json{{"lambda", 2.01}}.dump()), 400, "LambdaOutOfRange", "lambda");
  check_error(api.put(path, Json{{"lambda", "high"}}.dump()), 400, "InvalidArgument", "lambda");
  check_error(api.put(path, Json::object().dump()), 400, "InvalidArgument", "lambda");
  CHECK(api.store().load_session(canonical) == stored_before);
  check_error(api.put("/api/sessions/0123456789abcdef0123456789abcdef/lambda", Json{{"lambda", 1.0}}.dump()), 404,
              "NotFound");

  CHECK(api.llm().calls() == 0);
  CHECK(api.embedder().calls() == 0);
}

TEST_CASE("realign_session leaves failed variants alone") {
  auto s = make_terminal_session({"p1"}, {"m1", "m2"}, {"p1/m2"});
  const auto failed = s.variants[1];
  realign_session(s, 1.5);
  CHECK(s.lambda == 1.5);
  CHECK(s.variants[1] == failed);
  CHECK_FALSE(s.variants[0].alignments.empty());
}

TEST_CASE("CORS headers only when an origin is configured") {
  {
    ApiHarness api;
    const auto reply = api.get("/api/settings");
    CHECK(reply.headers.count("Access-Control-Allow-Origin") == 0);
  }
  ApiHarness api(test_provider_config(), ServiceOptions{"http://ui.test", {}});
  const auto reply = api.get("/api/settings");
  REQUIRE(reply.headers.count("Access-Control-Allow-Origin") == 1);
  CHECK(reply.headers.at("Access-Control-Allow-Origin") == "http://ui.test");
  const auto preflight = api.options("/api/sessions/abc/lambda");
  CHECK(preflight.status == 204);
  CHECK(preflight.headers.at("Access-Control-Allow-Methods").find("PUT") != std::string::npos);
}

TEST_CASE("status mapping") {
  CHECK(http_status(ErrorCode::NotFound) == 404);
  CHECK(http_status(ErrorCode::UnknownPrompt) == 404);
  CHECK(http_status(ErrorCode::UnknownModel) == 404);
  CHECK(http_status(ErrorCode::SessionPending) == 409);
  CHECK(http_status(ErrorCode::ProviderMisconfigured) == 502);
  CHECK(http_status(ErrorCode::IoError) == 500);
  CHECK(http_status(ErrorCode::InvalidDocument) == 500);
  for (auto code : {ErrorCode::InvalidArgument, ErrorCode::LambdaOutOfRange, ErrorCode::EmptySource,
                    ErrorCode::EmptyMatrix, ErrorCode::OutOfScale, ErrorCode::UnknownCriterion,
                    ErrorCode::VariantFailedOrMissing, ErrorCode::InvalidSettings}) {
    CHECK(http_status(code) == 400);
  }
  const auto body = error_body(Error(ErrorCode::OutOfScale, "too big", "[0].raw_score"));
  CHECK(body.at("code") == "OutOfScale");
  CHECK(body.at("field_path") == "[0].raw_score");
  CHECK_FALSE(error_body(Error(ErrorCode::NotFound, "gone")).contains("field_path"));
}
