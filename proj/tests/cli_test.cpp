// Copyright 2026 The riverdtn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "csv_reader.hpp"
#include "riverdtn/experiment.hpp"

namespace {

namespace fs = std::filesystem;

const std::string kCli = RIVERDTN_CLI;
const fs::path kGolden = RIVERDTN_GOLDEN_DIR;
const fs::path kScenarios = RIVERDTN_SCENARIO_DIR;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("riverdtn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result sh(const std::string& args, const std::string& env = "") const {
    const auto out = dir_ / "stdout.txt";
    const auto err = dir_ / "stderr.txt";
    const std::string cmd = env + " '" + kCli + "' " + args + " >'" + out.string() + "' 2>'" +
                            err.string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

TEST_F(Cli, NoSubcommandIsUsageError) { EXPECT_EQ(sh("").code, 2); }

TEST_F(Cli, ValidatePresets) {
  for (const char* name : {"testbed.json", "riverside.json"}) {
    const auto r = sh("validate --scenario '" + (kScenarios / name).string() + "'");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("schema ok"), std::string::npos);
    EXPECT_NE(r.out.find("\"workloads\""), std::string::npos);
  }
}

TEST_F(Cli, ConfigErrorsAreLineAnchored) {
  const auto bad = dir_ / "bad.json";
  put(bad, "{\n  \"name\": \"x\",\n  \"ttl_s\": -5,\n  \"colour\": 1\n}\n");
  const auto r = sh("validate --scenario '" + bad.string() + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(bad.string() + ":3: /ttl_s:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find(bad.string() + ":4: /colour: unknown field"), std::string::npos) << r.err;
}

TEST_F(Cli, MissingFilesAreIoErrors) {
  EXPECT_EQ(sh("validate --scenario '" + (dir_ / "none.json").string() + "'").code, 3);
  EXPECT_EQ(sh("codec decode '" + (dir_ / "none.bundle").string() + "'").code, 3);
  const auto m = dir_ / "m.json";
  put(m, R"({"map": "missing-map.json"})");
  EXPECT_EQ(sh("validate --scenario '" + m.string() + "'").code, 3);
}

TEST_F(Cli, RunRejectsBadMatrix) {
  const auto testbed = (kScenarios / "testbed.json").string();
  EXPECT_EQ(sh("run --scenario '" + testbed + "' --seeds 0 --out '" + dir_.string() + "'").code, 2);
  EXPECT_EQ(sh("run --scenario '" + testbed + "' --nodes 3,x --out '" + dir_.string() + "'").code,
            2);
  EXPECT_EQ(sh("run --scenario '" + testbed + "' --compression maybe").code, 2);
  const auto river = (kScenarios / "riverside.json").string();
  EXPECT_EQ(sh("run --scenario '" + river + "' --nodes 500 --out '" + dir_.string() + "'").code, 2);
}

TEST_F(Cli, RunIsByteIdenticalAndSummaryRecomputes) {
  const auto scenario = dir_ / "short.json";
  put(scenario, R"({"kind": "testbed", "name": "short", "duration_s": 1200})");
  const auto a = sh("run --scenario '" + scenario.string() + "' --nodes 3,6 --seeds 3 --out '" +
                    (dir_ / "a").string() + "'");
  ASSERT_EQ(a.code, 0) << a.err;
  const auto b = sh("run --scenario '" + scenario.string() + "' --nodes 3,6 --seeds 3 --jobs 2 --out '" +
                    (dir_ / "b").string() + "'", "RIVERDTN_LOG=debug");
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_FALSE(b.err.empty());
  const auto ra = slurp(dir_ / "a" / "results.csv");
  EXPECT_EQ(ra, slurp(dir_ / "b" / "results.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "summary.csv"), slurp(dir_ / "b" / "summary.csv"));

  const auto rows = riverdtn::testing::read_csv(ra);
  ASSERT_EQ(rows.size(), 1u + 2 * 3 * 3 * 2);
  const auto summary = riverdtn::testing::read_csv(slurp(dir_ / "a" / "summary.csv"));
  for (std::size_t i = 1; i < summary.size(); ++i) {
    double sum = 0;
    int n = 0;
    for (std::size_t j = 1; j < rows.size(); ++j) {
      if (rows[j][2] == summary[i][1] && rows[j][3] == summary[i][2] &&
          rows[j][4] == summary[i][3]) {
        sum += std::stod(rows[j][6]);
        ++n;
      }
    }
    ASSERT_EQ(n, 3);
    EXPECT_EQ(summary[i][6], riverdtn::experiment::format_number(sum / n));
  }
}

TEST_F(Cli, RunReportsUnwritableOutput) {
  const auto scenario = dir_ / "short.json";
  put(scenario, R"({"kind": "testbed", "duration_s": 60})");
  put(dir_ / "file", "x");
  const auto r = sh("run --scenario '" + scenario.string() + "' --seeds 1 --out '" +
                    (dir_ / "file" / "sub").string() + "'");
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST_F(Cli, CodecEncodeMatchesGoldenVector) {
  const auto desc = dir_ / "hello.json";
  put(desc, R"({"destination": "dtn://C1-resident-0", "source": "dtn://pier-a",
                "report_to": "dtn://pier-a", "creation_time": 43200, "creation_seq": 7,
                "lifetime": 86400, "payload_text": "hello"})");
  const auto out = dir_ / "hello.bundle";
  const auto r = sh("codec encode '" + desc.string() + "' '" + out.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  std::string hex;
  for (unsigned char c : slurp(out)) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", c);
    hex += buf;
  }
  std::string golden;
  std::istringstream lines(slurp(kGolden / "text_hello.hex"));
  for (std::string line; std::getline(lines, line);) {
    line = line.substr(0, line.find('#'));
    for (char c : line) {
      if (std::isxdigit(static_cast<unsigned char>(c))) {
        golden += static_cast<char>(std::tolower(c));
      }
    }
  }
  EXPECT_EQ(hex, golden);

  const auto d = sh("codec decode '" + out.string() + "'");
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_NE(d.out.find("dtn://C1-resident-0"), std::string::npos);
  EXPECT_NE(d.out.find("lifetime      86400 s"), std::string::npos);
}

TEST_F(Cli, CodecCompressRoundTrip) {
  const auto payload = dir_ / "payload.txt";
  std::string text;
  for (int i = 0; i < 200; ++i) {
    text += "the river carries the boat downstream; ";
  }
  put(payload, text);
  const auto desc = dir_ / "b.json";
  put(desc, R"({"destination": "dtn://c1", "source": "dtn://pier-a", "creation_time": 1,
                "lifetime": 60, "payload_file": "payload.txt"})");
  ASSERT_EQ(sh("codec encode '" + desc.string() + "' '" + (dir_ / "b.bundle").string() + "'").code,
            0);
  const auto c = sh("codec compress '" + (dir_ / "b.bundle").string() + "' '" +
                    (dir_ / "z.bundle").string() + "' --level 9");
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("original 7800 bytes"), std::string::npos) << c.out;
  EXPECT_LT(fs::file_size(dir_ / "z.bundle"), fs::file_size(dir_ / "b.bundle"));
  const auto d = sh("codec decode '" + (dir_ / "z.bundle").string() + "'");
  EXPECT_NE(d.out.find("(deflate)"), std::string::npos);
  EXPECT_EQ(sh("codec compress '" + (dir_ / "z.bundle").string() + "' '" +
               (dir_ / "zz.bundle").string() + "'").code,
            2);
  EXPECT_EQ(sh("codec compress '" + (dir_ / "b.bundle").string() + "' '" +
               (dir_ / "q.bundle").string() + "' --level 12").code,
            2);
}

TEST_F(Cli, CodecRejectsMalformedBundle) {
  put(dir_ / "junk.bundle", std::string("\x06\xff\xff", 3));
  const auto r = sh("codec decode '" + (dir_ / "junk.bundle").string() + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("malformed"), std::string::npos) << r.err;
}

}  // namespace
