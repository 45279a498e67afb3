#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eur/io.hpp"
#include "support.hpp"

using eur::io::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "eur_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

RunResult run(const std::string& args, const std::string& env = "") {
  const auto out = scratch() / "stdout.txt";
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + EUR_CLI_PATH + "' " + args + " >'" + out.string() +
                          "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string matrix_doc(const eur::ComplexMatrix& m) { return json{{"rho", eur::io::matrix_json(m)}}.dump(); }

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("bounds --family-a 0.5").code, 1);
  const auto both = run("bounds --state zero");
  EXPECT_EQ(both.code, 1);
  EXPECT_NE(both.err.find("eur: error[usage]"), std::string::npos) << both.err;
  EXPECT_EQ(run("bounds --family-a 0.5 --state minus1 --bounds foo").code, 1);
  EXPECT_EQ(run("bounds --family-a 0.5 --state minus1", "EUR_TOL=abc").code, 1);
}

TEST(Cli, BoundsFamily) {
  const auto r = run("bounds --family-a 0.5 --state minus1");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_NEAR(doc["entropy_total"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(doc["scb"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(doc["lmf"].get<double>(), 0.4150374992788432, 1e-12);
  EXPECT_TRUE(doc["all_satisfied"].get<bool>());
  EXPECT_EQ(doc["mu_pairwise"].size(), 3u);

  const auto mixed = run("bounds --family-a 0.3 --state mixed --bounds scb,rpz");
  ASSERT_EQ(mixed.code, 0) << mixed.err;
  const auto m = json::parse(mixed.out);
  EXPECT_NEAR(m["entropy_total"].get<double>(), 3 * std::log2(3.0), 1e-12);
  EXPECT_FALSE(m.contains("lmf"));
  EXPECT_TRUE(m["all_satisfied"].get<bool>());

  EXPECT_EQ(run("bounds --family-a 1.5 --state zero").code, 2);
  // A negative slack is rejected rather than used to flag tight bounds.
  EXPECT_EQ(run("bounds --family-a 0.5 --state minus1", "EUR_TOL=-1").code, 1);
}

TEST(Cli, BoundsStateAndMeasurementDocuments) {
  const auto bad = write_file("trace.json", R"({"rho": [[0.5,0,0],[0,0.3,0],[0,0,0.1]]})");
  const auto r = run("bounds --family-a 0.5 --state '" + bad.string() + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("trace"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("eur: error[validation]"), std::string::npos) << r.err;

  const auto ms = write_file("ms.json", R"([[[1,0],[0,1]], [[0.70710678118654752,0.70710678118654752],[0.70710678118654752,-0.70710678118654752]]])");
  const auto st = write_file("qubit.json", R"({"ket": [1, 0]})");
  const auto q = run("bounds --measurements '" + ms.string() + "' --state '" + st.string() + "'");
  ASSERT_EQ(q.code, 0) << q.err;
  const auto doc = json::parse(q.out);
  EXPECT_NEAR(doc["entropy_total"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(doc["rpz"].get<double>(), 0.872429339856468, 1e-10);

  EXPECT_EQ(run("bounds --measurements /nonexistent.json --state zero").code, 2);
}

TEST(Cli, SweepDefault) {
  const auto r = run("sweep");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 203u);
  EXPECT_EQ(lines[0], "a,state,entropy_total,scb,lmf,rpz");
  EXPECT_EQ(lines[1].substr(0, 16), "0,minus1,0,0,0,0");
  EXPECT_EQ(lines[101], "0.5,minus1,1,1,0.415037499279,0.959418728223");
  EXPECT_EQ(run("sweep").out, r.out);

  const auto out = scratch() / "sweep.json";
  ASSERT_EQ(run("sweep --from 0 --to 1 --steps 3 --state minus1 --format json --out '" + out.string() + "'").code, 0);
  const auto doc = json::parse(slurp(out));
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_NEAR(doc[1]["entropy_total"].get<double>(), 1.0, 1e-12);

  EXPECT_EQ(run("sweep --steps 1").code, 2);
  EXPECT_EQ(run("sweep --format xml").code, 1);
  EXPECT_EQ(run("sweep --state nobody").code, 2);
}

TEST(Cli, Tomography) {
  const auto state = write_file("estimate.json", matrix_doc(eur::testing::published_tomography_matrix()));
  const double s = 1.0 / std::sqrt(3.0);
  const auto target = write_file("target.json", json{{"ket", {s, s, s}}}.dump());
  const auto r = run("tomo --state '" + state.string() + "' --target '" + target.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_NEAR(doc["raw_fidelity_vs_target"].get<double>(), 0.953485, 1e-6);
  EXPECT_NEAR(doc["vn_entropy"].get<double>(), 0.41321, 1e-5);
  EXPECT_LT(doc["roundtrip_max_error"].get<double>(), 1e-12);

  const auto mixed = run("tomo --state mixed");
  ASSERT_EQ(mixed.code, 0) << mixed.err;
  EXPECT_NEAR(json::parse(mixed.out)["vn_entropy"].get<double>(), std::log2(3.0), 1e-9);

  const auto rec = write_file("record.json", R"({"set1": [0,0,0,0], "set2": [0,0,0,0], "set3": [0,0,0,0]})");
  const auto zero = run("tomo --record '" + rec.string() + "'");
  EXPECT_EQ(zero.code, 2);
  EXPECT_NE(zero.err.find("eur: error[data]"), std::string::npos) << zero.err;
  EXPECT_EQ(run("tomo").code, 1);
}

TEST(Cli, PulseVerify) {
  const auto r = run("pulse-verify");
  EXPECT_EQ(r.code, 3);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["total"].get<int>(), 17);
  EXPECT_EQ(doc["passed"].get<int>(), 5);
  EXPECT_FALSE(doc["all_passed"].get<bool>());

  auto table = json::parse(run("pulse-verify --dump-table").out);
  ASSERT_EQ(table.size(), 17u);
  json good = json::array({table[0], table[1], table[2], table[15], table[16]});
  const auto good_path = write_file("good.json", good.dump());
  const auto ok = run("pulse-verify --table '" + good_path.string() + "'");
  EXPECT_EQ(ok.code, 0) << ok.out;

  good[4]["pulses"][0]["angle_pi"] = 0.6;
  const auto bad_path = write_file("corrupted.json", good.dump());
  const auto bad = run("pulse-verify --table '" + bad_path.string() + "'");
  EXPECT_EQ(bad.code, 3);
  const auto bad_doc = json::parse(bad.out);
  EXPECT_EQ(bad_doc["passed"].get<int>(), 4);
  EXPECT_FALSE(bad_doc["rows"][4]["passed"].get<bool>());

  const auto empty = write_file("empty.json", "[]");
  EXPECT_EQ(run("pulse-verify --table '" + empty.string() + "'").code, 2);
}
