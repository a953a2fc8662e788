#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "tricoble/json_io.hpp"

using namespace tricoble;
using namespace tricoble::testing;

namespace {

const std::string kFixture = std::string(TRICOBLE_DATA_DIR) + "/fixture.json";

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "tricoble_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

Run run(const std::string& args) {
  const auto err_path = scratch("stderr.txt");
  const std::string cmd = std::string("'") + TRICOBLE_CLI + "' " + args + " 2>'" + err_path.string() + "'";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream e(err_path);
  std::stringstream ss;
  ss << e.rdbuf();
  r.err = ss.str();
  return r;
}

json fixture_json() { return read_json_file(kFixture); }

std::string write_config(const std::string& name, const json& j) {
  const auto path = scratch(name);
  std::ofstream(path) << j.dump();
  return path.string();
}

std::vector<std::string> strings(const std::vector<long>& v) {
  std::vector<std::string> out;
  for (long x : v) out.push_back(std::to_string(x));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config parsing

TEST(ConfigFile, ShippedFixtureMatchesPublishedData) {
  const auto cf = load_config(kFixture);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(cf.config.quadrics[i], quadric(i)) << i;
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(cf.config.points[i], point(i)) << kLabels[i];
  ASSERT_TRUE(cf.cubic.has_value());
  EXPECT_EQ(*cf.cubic, cubic_vector());
  EXPECT_FALSE(cf.prime.has_value());
}

TEST(ConfigFile, IntegersMayBeDecimalStrings) {
  json j = fixture_json();
  j["cubic"][1] = "56187";
  j["points"]["p1"] = {"1", "4", "0", "5"};
  j["prime"] = "29";
  const auto cf = parse_config(j);
  EXPECT_EQ((*cf.cubic)[1], Integer(56187));
  EXPECT_EQ(*cf.prime, 29u);
  j["cubic"][1] = "5.6e4";
  EXPECT_THROW(parse_config(j), SchemaError);
}

TEST(ConfigFile, BigIntegersSurvive) {
  json j = fixture_json();
  j["quadrics"][0][0] = "123456789012345678901234567890";
  const auto cf = parse_config(j);
  EXPECT_EQ(config_to_json(cf)["quadrics"][0][0], "123456789012345678901234567890");
}

TEST(ConfigFile, SchemaViolationsNameTheField) {
  auto expect_error = [](json j, const std::string& needle) {
    try {
      parse_config(j);
      ADD_FAILURE() << "no error for " << needle;
    } catch (const SchemaError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  json j = fixture_json();
  j.erase("quadrics");
  expect_error(j, "quadrics");
  j = fixture_json();
  j["quadrics"][1].erase(3);
  expect_error(j, "quadrics[1]");
  j = fixture_json();
  j["points"]["s1"] = {1, 2, 3, 4};
  expect_error(j, "s1");
  j = fixture_json();
  j["points"].erase("r2");
  expect_error(j, "points.r2");
  j = fixture_json();
  j["points"]["q2"] = {0, 0, 0, 0};
  expect_error(j, "points.q2");
  j = fixture_json();
  j["cubic"][19] = 1.5;
  expect_error(j, "cubic[19]");
  j = fixture_json();
  j["schema"] = "tricoble/0";
  expect_error(j, "schema");
  j = fixture_json();
  j["color"] = "red";
  expect_error(j, "color");
  j = fixture_json();
  j["prime"] = -7;
  expect_error(j, "prime");
  expect_error(json::array(), "object");
}

TEST(ConfigFile, RoundTrip) {
  const auto cf = load_config(kFixture);
  const json once = config_to_json(cf);
  const auto again = parse_config(once);
  EXPECT_EQ(config_to_json(again), once);
  EXPECT_EQ(json::parse(emit(once)), once);
}

// ---------------------------------------------------------------------------
// Report serialization

TEST(Report, CertificateRoundTripsThroughText) {
  const auto rep = certify(fixture_config(), published_cubic());
  const json j = to_json(rep);
  EXPECT_EQ(json::parse(emit(j)), j);
  EXPECT_EQ(j["conditions"].size(), 6u);
  EXPECT_TRUE(j["simple_tri_coble"].get<bool>());
}

TEST(Report, DynamicsUsesExactRationals) {
  const auto dd = dynamical_degree(phi_pullback(3), Rational(1, 1000000000));
  const json j = to_json(dd);
  EXPECT_EQ(json::parse(emit(j)), j);
  EXPECT_EQ(Rational(j["lambda1"]["lo"].get<std::string>()), dd.interval.lo);
  EXPECT_EQ(Rational(j["lambda1"]["hi"].get<std::string>()), dd.interval.hi);
  EXPECT_EQ(j["lambda1"]["display"].get<std::string>().substr(0, 12), "109.99090833");
}

TEST(Report, OrbitRecordRoundTrip) {
  OrbitRecord rec;
  rec.seed = make_point({1, 2, 3, 4});
  rec.points = {rec.seed, make_point({5, 6, 7, 8})};
  rec.heights = {4, 8};
  rec.log_height_ratios = {1.5};
  rec.error = "stage tau_r: example";
  const json j = to_json(rec);
  EXPECT_EQ(json::parse(emit(j)), j);
  EXPECT_EQ(j["log_height_ratios"][0], "1.500000");
  EXPECT_EQ(j["error"], "stage tau_r: example");
}

// ---------------------------------------------------------------------------
// Command line

TEST(Cli, ConstructFixture) {
  const auto r = run("construct '" + kFixture + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["schema"], kSchema);
  EXPECT_EQ(j["interpolation"]["rank"], 18);
  EXPECT_EQ(j["interpolation"]["kernel_dimension"], 2);
  EXPECT_TRUE(j["pencil_contains_input_cubic"].get<bool>());
  std::vector<std::string> expected;
  for (long c : kCubic) expected.push_back(std::to_string(c));
  EXPECT_EQ(j["cubic"].get<std::vector<std::string>>(), expected);
}

TEST(Cli, ConstructWithoutCubicStillSelectsIt) {
  json j = fixture_json();
  j.erase("cubic");
  const auto r = run("construct '" + write_config("nocubic.json", j) + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["cubic"][1], "56187");
  EXPECT_EQ(run("certify '" + scratch("nocubic.json").string() + "'").code, 2);
}

TEST(Cli, CertifyFixturePasses) {
  const auto r = run("certify '" + kFixture + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["certificate"]["tri_coble"].get<bool>());
  EXPECT_TRUE(j["certificate"]["simple_tri_coble"].get<bool>());
  ASSERT_EQ(j["t2"].size(), 12u);
  for (const auto& c : j["t2"]) EXPECT_TRUE(c["fixed"].get<bool>()) << c.dump();
}

TEST(Cli, MalformedJsonExitsTwo) {
  const auto path = scratch("malformed.json");
  std::ofstream(path) << "{\"quadrics\": [";
  const auto r = run("construct '" + path.string() + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not valid JSON"), std::string::npos) << r.err;
  EXPECT_EQ(run("construct '" + scratch("does-not-exist.json").string() + "'").code, 2);
}

TEST(Cli, PerturbedCubicExitsThree) {
  json j = fixture_json();
  j["cubic"][0] = 9964;
  const auto r = run("certify '" + write_config("perturbed.json", j) + "'");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("residual"), std::string::npos) << r.err;
}

TEST(Cli, SwappedLabelsExitThree) {
  json j = fixture_json();
  std::swap(j["points"]["p1"], j["points"]["q1"]);
  const auto r = run("certify '" + write_config("swapped.json", j) + "'");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("p1"), std::string::npos) << r.err;
}

TEST(Cli, BadPrimeIsDiagnosed) {
  json j = fixture_json();
  j["prime"] = 7;
  const auto r = run("construct '" + write_config("p7.json", j) + "'");
  EXPECT_EQ(r.code, 3);
  const auto rep = json::parse(r.out);
  EXPECT_FALSE(rep["prime_screen"]["good"].get<bool>());
  EXPECT_NE(rep["prime_screen"]["reason"].get<std::string>().find("Q3"), std::string::npos);
  j["prime"] = 29;
  const auto good = run("construct '" + write_config("p29.json", j) + "'");
  EXPECT_EQ(good.code, 0) << good.err;
  EXPECT_TRUE(json::parse(good.out)["prime_screen"]["good"].get<bool>());
}

TEST(Cli, DynamicsThreePairs) {
  const auto r = run("dynamics --pairs 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  // (t-1)(t+1)^10(t^2-110t+1), lowest degree first
  EXPECT_EQ(j["dynamics"]["charpoly"].get<std::vector<std::string>>(),
            strings({-1, 101, 954, 3766, 8125, 9783, 4572, -4572, -9783, -8125, -3766, -954, -101, 1}));
  const Rational lo(j["dynamics"]["lambda1"]["lo"].get<std::string>()), hi(j["dynamics"]["lambda1"]["hi"].get<std::string>());
  EXPECT_LE(hi - lo, Rational(1, 1000000000));
  // lo <= 55 + 12 sqrt(21) <= hi, squared exactly
  EXPECT_LE((lo - 55) * (lo - 55), Rational(3024));
  EXPECT_GE((hi - 55) * (hi - 55), Rational(3024));
  EXPECT_EQ(j["dynamics"]["lambda1"]["exact"], "55+12*sqrt(21)");
  EXPECT_EQ(j["phi"][0][0], "377");
  EXPECT_EQ(j["fixed_space"].size(), 1u);
  EXPECT_EQ(j["bertini_blocks"].size(), 3u);
}

TEST(Cli, DynamicsOtherPairCounts) {
  const auto two = json::parse(run("dynamics --pairs 2").out);
  EXPECT_EQ(two["rank"], 11);
  EXPECT_GE(two["fixed_space"].size(), 1u);
  const auto one = json::parse(run("dynamics --pairs 1").out);
  EXPECT_EQ(one["dynamics"]["lambda1"]["exact"], "1");
  const auto coarse = json::parse(run("dynamics --pairs 3 --eps 1/1000").out);
  EXPECT_EQ(coarse["eps"], "1/1000");
  EXPECT_EQ(run("dynamics --pairs 0").code, 2);
  EXPECT_EQ(run("dynamics --eps banana").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, OutputFlagWritesFile) {
  const auto path = scratch("dyn.json");
  std::filesystem::remove(path);
  const auto r = run("dynamics --pairs 1 -o '" + path.string() + "'");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_json_file(path.string())["rank"], 9);
}

TEST(Cli, ReportsAreDeterministic) {
  for (const std::string& args : {"certify '" + kFixture + "'", std::string("dynamics --pairs 3"),
                                 "orbit '" + kFixture + "' --steps 1"}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(emit(json::parse(a.out)), a.out) << args;
  }
}

TEST(Cli, OrbitSeeds) {
  const auto zero = json::parse(run("orbit '" + kFixture + "' --steps 0").out)["orbit"];
  EXPECT_EQ(zero["points"].size(), 1u);
  EXPECT_EQ(zero["points"][0], zero["seed"]);
  const auto chord = third_intersection(published_cubic(), point(0), point(2));
  EXPECT_EQ(zero["seed"], io::point(chord));

  const auto two = json::parse(run("orbit '" + kFixture + "' --steps 2").out)["orbit"];
  ASSERT_EQ(two["heights"].size(), 3u);
  Integer prev = 0;
  for (const auto& h : two["heights"]) {
    const Integer cur(h.get<std::string>());
    EXPECT_GT(cur, prev);
    prev = cur;
  }
  EXPECT_FALSE(two["truncated"].get<bool>());

  const std::string explicit_seed = chord.coords()[0].get_str() + "," + chord.coords()[1].get_str() + "," +
                                    chord.coords()[2].get_str() + "," + chord.coords()[3].get_str();
  EXPECT_EQ(json::parse(run("orbit '" + kFixture + "' --steps 0 --seed " + explicit_seed).out)["orbit"]["seed"], zero["seed"]);
  EXPECT_EQ(run("orbit '" + kFixture + "' --seed 1,0,0,0").code, 2);
  EXPECT_EQ(run("orbit '" + kFixture + "' --seed chord:p1,s9").code, 2);
}

TEST(Cli, OrbitBudgetTruncatesCleanly) {
  const auto r = run("orbit '" + kFixture + "' --steps 5 --height-budget 3");
  EXPECT_EQ(r.code, 0);
  const auto o = json::parse(r.out)["orbit"];
  EXPECT_TRUE(o["truncated"].get<bool>());
  EXPECT_EQ(o["points"].size(), 1u);
}

TEST(Cli, OrbitStageErrorKeepsPartialRecord) {
  // q1 is a base point of tau_q, the first involution phi applies.
  const auto r = run("orbit '" + kFixture + "' --seed q1 --steps 1");
  EXPECT_EQ(r.code, 4);
  const auto o = json::parse(r.out)["orbit"];
  EXPECT_EQ(o["points"].size(), 1u);
  EXPECT_EQ(o["error"].get<std::string>().rfind("stage tau_q", 0), 0u);
}

TEST(Cli, FfexpTrivialTargets) {
  const auto r = run("ffexp '" + kFixture + "' --prime 29");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["prime_screen"]["good"].get<bool>());
  EXPECT_EQ(j["fixing_exponent"]["m"], "1");
  EXPECT_EQ(run("ffexp '" + kFixture + "'").code, 2);               // no prime anywhere
  EXPECT_EQ(run("ffexp '" + kFixture + "' --prime 7").code, 3);     // bad prime
  EXPECT_EQ(run("ffexp '" + kFixture + "' --prime 29 --map px").code, 2);
}

TEST(Cli, FfexpMatchesBruteForceCycles) {
  // Targets: points of S(F_p) off the base lines, found by search; the
  // expected exponent comes from walking each orbit independently.
  const GF field(59);
  const auto cfg = reduce_mod(fixture_config(), field);
  const auto f = reduce_mod(published_cubic(), field);
  const BertiniTriple<Fp> triple(f, cfg.points);
  auto pq = [&](const ProjPoint<Fp>& z) { return triple.apply("pq", z); };
  std::vector<std::string> coords;
  std::vector<std::size_t> lengths;
  for (long x = 0; x < 59 && coords.size() < 4; ++x)
    for (long y = 0; y < 59 && coords.size() < 4; y += 7) {
      // solve the cubic for z by search
      for (long z = 0; z < 59; ++z) {
        const Vec<Fp> v{field.one(), field(x), field(y), field(z)};
        if (!is_zero(f(v))) continue;
        const ProjPoint<Fp> pt(v);
        std::size_t len = 0;
        try {
          len = brute_force_cycle(pt, pq, 100000);
        } catch (const Error&) {
          continue;
        }
        if (len == 0) continue;
        coords.push_back("1:" + std::to_string(x) + ":" + std::to_string(y) + ":" + std::to_string(z));
        lengths.push_back(len);
        break;
      }
    }
  ASSERT_EQ(coords.size(), 4u);
  std::string targets;
  for (const auto& c : coords) targets += (targets.empty() ? "" : ",") + c;
  const auto r = run("ffexp '" + kFixture + "' --prime 59 --map pq --targets " + targets);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out)["fixing_exponent"];
  EXPECT_EQ(Integer(j["m"].get<std::string>()), lcm_of(lengths));
  EXPECT_GT(Integer(j["m"].get<std::string>()), Integer(1));
  for (std::size_t i = 0; i < lengths.size(); ++i) EXPECT_EQ(j["cycle_lengths"][i], std::to_string(lengths[i]));
  // A bound below the longest cycle is a budget failure.
  const std::size_t longest = *std::max_element(lengths.begin(), lengths.end());
  EXPECT_EQ(run("ffexp '" + kFixture + "' --prime 59 --targets " + targets + " --bound " + std::to_string(longest - 1)).code, 4);
}

TEST(Cli, FfexpSingleInvolution) {
  const auto r = run("ffexp '" + kFixture + "' --prime 29 --map p --targets q1,r2");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = json::parse(r.out)["fixing_exponent"]["m"].get<std::string>();
  EXPECT_TRUE(m == "1" || m == "2");
}
