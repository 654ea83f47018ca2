// Copyright 2026 The Testforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "support/test_util.h"
#include "testforge/common/bytes.h"
#include "testforge/common/file.h"
#include "testforge/common/int128.h"
#include "testforge/common/rng.h"
#include "testforge/common/sha256.h"
#include "testforge/common/subprocess.h"

namespace testforge {
namespace {

TEST(BytesTest, HexRoundTrip) {
  Bytes b = {0x00, 0x7f, 0x80, 0xff};
  EXPECT_EQ(HexEncode(b), "007f80ff");
  EXPECT_EQ(HexDecode("007F80ff"), b);
  EXPECT_FALSE(HexDecode("abc").has_value());
  EXPECT_FALSE(HexDecode("zz").has_value());
}

TEST(BytesTest, EscapeRoundTrip) {
  Bytes b = {'a', '\\', '\n', 0x00, 0xfe};
  EXPECT_EQ(UnescapeBytes(EscapeBytes(b)), b);
  EXPECT_EQ(UnescapeBytes("BUG\\x00"), (Bytes{'B', 'U', 'G', 0}));
  EXPECT_FALSE(UnescapeBytes("\\q").has_value());
  EXPECT_FALSE(UnescapeBytes("\\x4").has_value());
}

TEST(BytesTest, FindSubsequence) {
  Bytes hay = ToBytes("abcabc");
  EXPECT_EQ(FindSubsequence(hay, ToBytes("ca")), 2u);
  EXPECT_EQ(FindSubsequence(hay, ToBytes("abc"), 1), 3u);
  EXPECT_FALSE(FindSubsequence(hay, ToBytes("x")).has_value());
}

TEST(Sha256Test, KnownVectors) {
  EXPECT_EQ(Sha256Hex(std::string_view("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(Sha256Hex(std::string_view("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Int128Test, WidthLimits) {
  EXPECT_EQ(MaxForWidth(8, false), 255);
  EXPECT_EQ(MinForWidth(16, true), -32768);
  EXPECT_EQ(Int128ToString(MaxForWidth(64, false)), "18446744073709551615");
  EXPECT_EQ(Int128ToString(MinForWidth(64, true)), "-9223372036854775808");
  EXPECT_TRUE(FitsWidth(-1, 8, true));
  EXPECT_FALSE(FitsWidth(-1, 8, false));
  EXPECT_EQ(FromBits(ToBits(-2, 16), 16, true), -2);
  EXPECT_EQ(ParseInt128("-18446744073709551616"), -(static_cast<Int128>(1) << 64));
  EXPECT_EQ(ParseInt128("0xff"), 255);
  // Far past any field width.
  EXPECT_FALSE(ParseInt128("170141183460469231731687303715884105727").has_value());
  EXPECT_FALSE(ParseInt128("12x").has_value());
}

TEST(RngTest, DeterministicAndForkIndependent) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.Next(), b.Next());
  Rng c(42);
  Rng f1 = c.Fork("x");
  c.Next();
  Rng f2 = c.Fork("x");
  EXPECT_EQ(f1.Next(), f2.Next());
  EXPECT_NE(Rng(42).Fork("x").Next(), Rng(42).Fork("y").Next());
}

TEST(RngTest, UniformStaysInBounds) {
  Rng r(7);
  for (int i = 0; i < 10000; ++i) {
    auto v = r.Uniform(3, 9);
    ASSERT_GE(v, 3u);
    ASSERT_LE(v, 9u);
  }
  EXPECT_EQ(r.Uniform(5, 5), 5u);
}

TEST(RngTest, WeightedNeverPicksZeroWeight) {
  Rng r(1);
  std::vector<double> w = {0.0, 1.0, 0.0, 2.0};
  for (int i = 0; i < 1000; ++i) {
    auto k = r.Weighted(w);
    ASSERT_TRUE(k == 1 || k == 3);
  }
}

TEST(FileTest, WriteThenRead) {
  test_support::TempDir dir;
  auto p = dir.path() / "f.bin";
  ASSERT_TRUE(WriteFile(p, std::string("a\0b", 3)));
  EXPECT_EQ(ReadFile(p), std::string("a\0b", 3));
  EXPECT_FALSE(ReadFile(dir.path() / "missing").has_value());
}

TEST(SubprocessTest, CapturesOutputAndExitCode) {
  auto r = RunCommand({"sh", "-c", "printf hello; exit 3"}, {}, {});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->outcome, CommandResult::Outcome::kExited);
  EXPECT_EQ(r->status, 3);
  EXPECT_EQ(ToString(r->output), "hello");
}

TEST(SubprocessTest, EnforcesTimeoutAndOutputCap) {
  CommandLimits quick;
  quick.timeout = std::chrono::milliseconds(200);
  auto slow = RunCommand({"sleep", "5"}, {}, quick);
  ASSERT_TRUE(slow);
  EXPECT_EQ(slow->outcome, CommandResult::Outcome::kTimeout);
  CommandLimits small;
  small.max_output = 4;
  auto big = RunCommand({"sh", "-c", "printf 0123456789"}, {}, small);
  ASSERT_TRUE(big);
  EXPECT_EQ(big->outcome, CommandResult::Outcome::kOutputTooLarge);
}

TEST(SubprocessTest, PassesEnvironment) {
  auto r = RunCommand({"sh", "-c", "printf %s \"$TF_X\""}, {{"TF_X", "v1"}}, {});
  ASSERT_TRUE(r);
  EXPECT_EQ(ToString(r->output), "v1");
}

TEST(SubprocessTest, ChildProcessLineExchange) {
  ChildProcess child;
  ASSERT_TRUE(child.Start({"cat"}));
  ASSERT_TRUE(child.WriteLine("ping"));
  std::string line;
  EXPECT_EQ(child.ReadLine(line, std::chrono::milliseconds(2000)), ChildProcess::ReadStatus::kLine);
  EXPECT_EQ(line, "ping");
  EXPECT_EQ(child.ReadLine(line, std::chrono::milliseconds(50)), ChildProcess::ReadStatus::kTimeout);
  child.Kill();
  EXPECT_FALSE(child.running());
}

}  // namespace
}  // namespace testforge
