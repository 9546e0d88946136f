// Copyright 2026 The Enclavon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "enclavon/demos/demos.h"

#include <sstream>
#include <string>

#include "enclavon/common/status.h"
#include "enclavon/semantics/properties.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace enclavon::demos {
namespace {

using ::testing::HasSubstr;
using ::testing::MatchesRegex;
using ::testing::StartsWith;

TEST(CounterDemoTest, PrintsPreIncrementValues) {
  std::ostringstream out;
  ASSERT_TRUE(CounterDemo(DemoOptions{}, out).ok());
  EXPECT_EQ(out.str(), "Counter's #0\nCounter's #1\nCounter's #2\n");
}

TEST(PasswordCheckDemoTest, TrueOnlyForTheSecret) {
  for (const auto& [guess, want] :
       std::vector<std::pair<std::string, std::string>>{
           {"secret\n", "Login returned True\n"},
           {"secret", "Login returned True\n"},
           {"Secret\n", "Login returned False\n"},
           {"secret \n", "Login returned False\n"},
           {"\n", "Login returned False\n"},
           {"", "Login returned False\n"}}) {
    std::istringstream in(guess);
    std::ostringstream out;
    ASSERT_TRUE(PasswordCheckDemo(DemoOptions{}, in, out).ok());
    EXPECT_EQ(out.str(), want) << guess;
  }
}

TEST(CalcTest, SampleProgramValueAndEnvironments) {
  std::ostringstream out;
  ASSERT_TRUE(RunCalc("(let m 3 (let f (fun (x) (+ x m)) (let y (inEnclave f) "
                      "(gateway (<@> y 2)))))",
                      out)
                  .ok());
  EXPECT_EQ(out.str(),
            "value: IntVal 5\n"
            "enclave env: [m ↦ IntVal 3, f ↦ Closure [\"x\"] (+ x m) "
            "[m ↦ IntVal 3], EncVar0 ↦ Closure [\"x\"] (+ x m) "
            "[m ↦ IntVal 3], y ↦ Dummy]\n"
            "client env: [m ↦ IntVal 3, f ↦ Closure [\"x\"] (+ x m) "
            "[m ↦ IntVal 3], EncVar0 ↦ Dummy, "
            "y ↦ SecureClosure \"EncVar0\" []]\n");
}

TEST(CalcTest, ParseErrorsSurface) {
  std::ostringstream out;
  absl::Status s = RunCalc("(let m", out);
  EXPECT_TRUE(HasErrorKind(s, ErrorKind::kParse)) << s;
  EXPECT_EQ(ExitCodeFor(s), kExitUsage);
}

TEST(FuzzTest, SmallRunPasses) {
  std::ostringstream out;
  ASSERT_TRUE(RunFuzz(0, 40, 30, out).ok()) << out.str();
  EXPECT_EQ(out.str(),
            "noninterference: 40 cases, 0 failures\n"
            "association: 40 cases, 0 failures\n"
            "enclave-free oracle: 40 cases, 0 failures\n");
  EXPECT_TRUE(HasErrorKind(RunFuzz(0, 1, 0, out), ErrorKind::kUsage));
}

TEST(PropertiesTest, ReportsCountCases) {
  EXPECT_EQ(semantics::CheckEnclaveFreeOracle(100, 25).cases, 25);
  EXPECT_EQ(semantics::CheckAssociation(100, 25).failures, 0);
  semantics::PropertyReport ni = semantics::CheckNoninterferenceCases(7, 25);
  EXPECT_EQ(ni.cases, 25);
  EXPECT_EQ(ni.failures, 0);
  EXPECT_TRUE(ni.first_failure.empty());
}

TEST(CleanRoomDemoTest, PrintsNoisedCount) {
  DemoOptions options;
  options.seed = 42;
  std::ostringstream out;
  ASSERT_TRUE(CleanRoomDemo(options, out).ok());
  EXPECT_THAT(out.str(), MatchesRegex("provisioned: 500\nres: -?[0-9.e+-]+\n"));
}

TEST(FedSumDemoTest, AveragesMatchPlaintextMeans) {
  DemoOptions options;
  options.seed = 3;
  std::ostringstream out;
  ASSERT_TRUE(FedSumDemo(options, out).ok());
  std::string text = out.str();
  EXPECT_THAT(text, StartsWith("epoch 0 average: ["));
  EXPECT_THAT(text, HasSubstr("\nepoch 1 average: ["));
  EXPECT_THAT(text, HasSubstr("absent replies: 2\n"));
  // Printed at six decimals, the revealed and expected vectors agree.
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    size_t a = line.find("average: ");
    size_t e = line.find(" expected: ");
    size_t r = line.find(" absent replies");
    ASSERT_NE(a, std::string::npos);
    EXPECT_EQ(line.substr(a + 9, e - a - 9), line.substr(e + 11, r - e - 11));
  }
}

TEST(BenchTest, ReportsMean) {
  std::ostringstream out;
  ASSERT_TRUE(RunBench(20, out).ok());
  EXPECT_THAT(out.str(),
              MatchesRegex("gateway round-trip over loopback TCP: mean "
                           "[0-9]+\\.[0-9] us over 20 calls\n"));
  auto mean = MeasureGatewayRoundTrip(5);
  ASSERT_TRUE(mean.ok());
  EXPECT_GT(*mean, 0);
  EXPECT_FALSE(MeasureGatewayRoundTrip(0).ok());
}

TEST(ExitCodeTest, Mapping) {
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), kExitOk);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorKind::kUsage, "")), kExitUsage);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorKind::kConnectFailure, "")),
            kExitTransport);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorKind::kTransportTimeout, "")),
            kExitTransport);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorKind::kRegistryMismatch, "")),
            kExitTransport);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorKind::kIntegrity, "")), kExitIntegrity);
  EXPECT_EQ(
      ExitCodeFor(WithRemoteErrorKind(MakeError(ErrorKind::kHandlerFailed, ""),
                                      ErrorKind::kIntegrity)),
      kExitIntegrity);
  EXPECT_EQ(ExitCodeFor(absl::InternalError("foreign")), kExitUsage);
}

TEST(WalletCommandTest, Validation) {
  EXPECT_TRUE(ValidateWalletCommand({"add", {"a", "b", "c", "d"}}).ok());
  EXPECT_TRUE(ValidateWalletCommand({"change-master", {"a", "b"}}).ok());
  EXPECT_FALSE(ValidateWalletCommand({"add", {"a"}}).ok());
  EXPECT_FALSE(ValidateWalletCommand({"rename", {"a", "b"}}).ok());
}

TEST(WalletCommandTest, MissingKeyIsUsageError) {
  DemoOptions options;
  std::ostringstream out;
  StoreFactory failing = [] {
    return absl::StatusOr<std::shared_ptr<ifc::SecureStore>>(
        MakeError(ErrorKind::kUsage, "HASTEE_RSK is not set"));
  };
  absl::Status s = WalletDemo(options, {"get", {"m", "t"}}, failing, out);
  EXPECT_TRUE(HasErrorKind(s, ErrorKind::kUsage)) << s;
  EXPECT_EQ(out.str(), "");
}

}  // namespace
}  // namespace enclavon::demos
