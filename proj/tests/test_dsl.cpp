#include <catch_amalgamated.hpp>

#include <filesystem>

#include "oracles.hpp"

using namespace sqk;
namespace fs = std::filesystem;

namespace {

ParseError parse_failure(std::string_view text) {
  try {
    parse_sqcat(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("document parsed");
  throw;
}

std::vector<fs::path> fixtures(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".sqcat") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

DocumentMode mode_for(const fs::path& p) {
  return p.filename().string().starts_with("gen_") ? DocumentMode::generating : DocumentMode::category;
}

std::string expected_rule(const std::string& text) {
  const std::string tag = "# expect: ";
  REQUIRE(text.starts_with(tag));
  return text.substr(tag.size(), text.find('\n') - tag.size());
}

}  // namespace

TEST_CASE("the one-object document") {
  const std::string text = "category point\nobjects: O\nbasepoint: O\nsquare id_O id_O id_O id_O\n";
  const SqcatDocument doc = parse_sqcat(text);
  CHECK(doc.name == "point");
  const SquaresCategory sq = elaborate(doc);
  CHECK(sq.object_count() == 1);
  CHECK(sq.ecat().morphism_count() == 1);  // the implicit identity only
  CHECK(sq.mcat().morphism_count() == 1);
  CHECK(sq == point_category());
  // without the identity square the document parses but is not a squares category
  const SquaresCategory bare = elaborate(parse_sqcat("category point\nobjects: O\nbasepoint: O\n"));
  CHECK(validate_squares_category(bare).has_rule("missing-identity-square"));
  CHECK(validate_squares_category(sq).ok);
}

TEST_CASE("a document without a basepoint is rejected") {
  const ParseError e = parse_failure("category nobase\nobjects: O\n");
  CHECK(e.code() == "missing-basepoint");
}

TEST_CASE("parse errors carry a position and the expected tokens") {
  const ParseError e = parse_failure(oracle::read_text(oracle::data_path("broken/parse_error.sqcat")));
  CHECK(e.code() == "parse-error");
  CHECK(e.line() == 4);
  CHECK(e.column() == 11);
  CHECK(std::find(e.expected().begin(), e.expected().end(), "':'") != e.expected().end());
}

TEST_CASE("duplicate and unknown identifiers") {
  const ParseError dup = parse_failure(oracle::read_text(oracle::data_path("broken/duplicate_id.sqcat")));
  CHECK(dup.code() == "duplicate-id");
  CHECK(dup.line() == 5);
  const ParseError unk = parse_failure(oracle::read_text(oracle::data_path("broken/unknown_id.sqcat")));
  CHECK(unk.code() == "unknown-id");
  CHECK(unk.line() == 4);
  // id_X is taken as soon as X is declared
  CHECK(parse_failure("category c\nobjects: O\nbasepoint: O\ne-morph id_O : O -> O\n").code() == "duplicate-id");
  CHECK(parse_failure("category c\nobjects: O\nbasepoint: O\nsquare id_O id_O id_O f\n").code() == "unknown-id");
}

TEST_CASE("comments, blank lines and CRLF are ignored") {
  const std::string plain = "category t\nobjects: O A\nbasepoint: O\ne-morph u : O -> A\nm-morph u : O -> A\n";
  const std::string noisy =
      "# leading\r\n\r\ncategory t   # trailing\r\nobjects: O A\r\n  basepoint: O\r\n"
      "e-morph u : O -> A\r\n# between\r\nm-morph u:O->A\r\n";
  CHECK(parse_sqcat(noisy) == parse_sqcat(plain));
}

TEST_CASE("round trip on every fixture") {
  std::vector<fs::path> files = fixtures(oracle::data_path(""));
  const auto mutated = fixtures(oracle::data_path("mutated"));
  files.insert(files.end(), mutated.begin(), mutated.end());
  REQUIRE(files.size() >= 20);
  for (const fs::path& p : files) {
    INFO(p.filename().string());
    const DocumentMode mode = mode_for(p);
    const SqcatDocument doc = parse_sqcat(oracle::read_text(p.string()), mode);
    const std::string once = serialize(doc);
    CHECK(parse_sqcat(once, mode) == doc);
    CHECK(serialize(parse_sqcat(once, mode)) == once);
  }
}

TEST_CASE("fixtures elaborate to the gallery categories") {
  const std::vector<std::pair<std::string, SquaresCategory>> cases = {
      {"point", point_category()},          {"toy", two_object_category()},
      {"finset1", finset_category(1)},      {"finset2", finset_category(2)},
      {"finset3", finset_category(3)},      {"grid1", grid_interval_category(1)},
      {"grid2", grid_interval_category(2)}, {"grid3", grid_interval_category(3)},
      {"vect1", vect_f2_category(1)},       {"vect2", vect_f2_category(2)},
  };
  for (const auto& [name, expected] : cases) {
    INFO(name);
    const SquaresCategory sq = elaborate(parse_sqcat(oracle::read_text(oracle::data_path(name + ".sqcat"))));
    CHECK(sq == expected);
    CHECK(validate_squares_category(sq).ok);
    if (name != "point") CHECK(serialize(to_document(expected, name)) == oracle::read_text(oracle::data_path(name + ".sqcat")));
  }
}

TEST_CASE("documents round-trip through categories") {
  for (const SquaresCategory& sq : {two_object_category(), finset_category(2), grid_interval_category(1)}) {
    const SqcatDocument doc = to_document(sq, "c");
    const SquaresCategory back = elaborate(parse_sqcat(serialize(doc)));
    CHECK(back == sq);
    CHECK(to_document(back, "c") == doc);
  }
}

TEST_CASE("mutated fixtures are rejected with the recorded rule") {
  const auto files = fixtures(oracle::data_path("mutated"));
  REQUIRE(files.size() == 10);
  for (const fs::path& p : files) {
    INFO(p.filename().string());
    const std::string text = oracle::read_text(p.string());
    const auto report = validate_squares_category(elaborate(parse_sqcat(text)));
    CHECK_FALSE(report.ok);
    CHECK(report.has_rule(expected_rule(text)));
    // the verdict survives a serialize/parse cycle
    const auto again = validate_squares_category(elaborate(parse_sqcat(serialize(parse_sqcat(text)))));
    CHECK(again.ok == report.ok);
    CHECK(again.violations.size() == report.violations.size());
  }
}

TEST_CASE("generating documents close to the category they generate") {
  const std::string gen = oracle::read_text(oracle::data_path("gen_finset1.sqcat"));
  const SquaresCategory closed = generate_from_squares(elaborate_generating(parse_sqcat(gen, DocumentMode::generating)));
  CHECK(closed == finset_category(1));
  const Report r = run_command("close", gen);
  REQUIRE(r.exit_code() == 0);
  CHECK(r.result["sqcat"].get<std::string>() == oracle::read_text(oracle::data_path("finset1.sqcat")));
  CHECK_THROWS_MATCHES(parse_sqcat("category g\nobjects: O\nbasepoint: O\nm-morph u : O -> O\n", DocumentMode::generating),
                       ParseError,
                       Catch::Matchers::Predicate<ParseError>([](const ParseError& e) { return e.code() == "parse-error"; }));
}

TEST_CASE("run_command payloads") {
  const Report k0 = run_command("k0", oracle::read_text(oracle::data_path("finset2.sqcat")));
  CHECK(k0.exit_code() == 0);
  CHECK(k0.result["rank"] == 1);
  CHECK(k0.result["torsion"] == Json::array());
  CHECK(k0.input_digest.starts_with("sha256:"));
  CHECK(k0.input_digest.size() == 7 + 64);

  const Report point = run_command("compare", oracle::read_text(oracle::data_path("point.sqcat")));
  CHECK(point.exit_code() == 0);
  CHECK(point.result["agree"] == true);
  CHECK(point.result["star_condition"] == true);
  CHECK(point.result["k0"]["rank"] == 0);

  const Report grid = run_command("compare", oracle::read_text(oracle::data_path("grid1.sqcat")));
  CHECK(grid.result["k0"]["rank"] == 3);
  CHECK(grid.result["pi1_abelianized"]["rank"] == 3);
  CHECK(grid.result["agree"] == true);

  const Report pi1 = run_command("pi1", oracle::read_text(oracle::data_path("toy.sqcat")));
  CHECK(pi1.result["generators"].size() == 1);
  CHECK(pi1.result["abelianization"]["rank"] == 1);

  const Report ex = run_command("example", "", {"finset", "1"});
  CHECK(ex.exit_code() == 0);
  CHECK(ex.result["sqcat"].get<std::string>() == oracle::read_text(oracle::data_path("finset1.sqcat")));
}

TEST_CASE("exit codes and diagnostics") {
  const Report parse = run_command("validate", oracle::read_text(oracle::data_path("broken/parse_error.sqcat")));
  CHECK(parse.exit_code() == 2);
  REQUIRE(parse.diagnostics.size() == 1);
  CHECK(parse.diagnostics[0].line == 4u);
  CHECK(parse.to_json()["diagnostics"][0]["code"] == "parse-error");

  const std::string mutated = oracle::read_text(oracle::data_path("mutated/m04_pasting_finset2.sqcat"));
  const Report bad = run_command("validate", mutated);
  CHECK(bad.exit_code() == 1);
  CHECK(bad.result["ok"] == false);
  CHECK(run_command("k0", mutated).exit_code() == 1);

  RunOptions tight;
  tight.caps.max_grids = 5;
  const Report capped = run_command("pi1", oracle::read_text(oracle::data_path("finset2.sqcat")), {}, tight);
  CHECK(capped.exit_code() == 1);
  REQUIRE_FALSE(capped.diagnostics.empty());
  CHECK(capped.diagnostics[0].code == "cap-exceeded");

  CHECK(run_command("example", "", {"finset", "9"}).exit_code() == 1);
}

TEST_CASE("reports are deterministic") {
  for (const char* name : {"toy", "finset2", "grid2"}) {
    const std::string text = oracle::read_text(oracle::data_path(std::string(name) + ".sqcat"));
    for (const char* cmd : {"validate", "k0", "pi1", "compare"})
      CHECK(run_command(cmd, text).dump() == run_command(cmd, text).dump());
  }
}
