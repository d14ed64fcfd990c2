// Copyright 2026 The ibrl Authors.
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


#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ibrl/env/environment.h"
#include "ibrl/env/trace_io.h"
#include "invariants.h"

namespace ibrl {
namespace {

MarketConfig Small(int horizon) {
  MarketConfig c;
  c.horizon = horizon;
  c.snapshot_every = 5;
  return c;
}

TEST(Environment, InitialObservationIsSymmetric) {
  Environment env(Small(10));
  const MdpObservation o = env.Reset(3);
  EXPECT_EQ(o.c_max, o.c_min);
  EXPECT_EQ(o.c_max, o.c_avg);
  EXPECT_EQ(o.r_max, 0.02);
  EXPECT_EQ(o.r_min, 0.02);
  EXPECT_EQ(o.r_avg, 0.02);
}

TEST(Environment, SameSeedSameTrace) {
  auto run = [](uint64_t seed) {
    Environment env(Small(60));
    env.Reset(seed);
    for (int t = 0; t < 60; ++t) env.Step(t % 3 == 0);
    std::ostringstream out;
    WriteTraceCsv(out, TraceRows(env.trace()));
    WriteDetailCsv(out, DetailRows(env.trace()));
    WriteEdgeCsv(out, env.trace().snapshots);
    return out.str();
  };
  EXPECT_EQ(run(11), run(11));
  EXPECT_NE(run(11), run(12));
}

TEST(Environment, ResetRestartsEpisode) {
  Environment env(Small(20));
  const MdpObservation first = env.Reset(5);
  while (!env.done()) env.Step(1);
  EXPECT_THROW(env.Step(0), std::logic_error);
  EXPECT_EQ(env.Reset(5), first);
  EXPECT_EQ(env.period(), 0);
}

TEST(Environment, RejectsBadAction) {
  Environment env(Small(5));
  EXPECT_THROW(env.Step(0), std::logic_error);
  env.Reset(1);
  EXPECT_THROW(env.Step(2), std::invalid_argument);
}

TEST(Environment, InvariantsHoldOverEpisodes) {
  testing::InvariantReport report;
  MarketConfig c = Small(150);
  for (uint64_t seed = 1; seed <= 4; ++seed) testing::CheckEpisode(c, seed, report);
  c.max_out_degree = 3;
  testing::CheckEpisode(c, 9, report);
  EXPECT_EQ(report.violations, 0) << (report.first.empty() ? "" : report.first[0]);
  EXPECT_GT(report.checks, 100000);
}

TEST(Environment, TraceRecordsPriorObservation) {
  Environment env(Small(5));
  MdpObservation obs = env.Reset(2);
  for (int t = 0; t < 5; ++t) {
    const StepResult r = env.Step(0);
    EXPECT_EQ(env.trace().steps.back().prior_observation, obs);
    obs = r.observation;
  }
}

TEST(Observe, Aggregates) {
  MarketState m;
  for (int i = 0; i < 3; ++i) {
    BankState b;
    b.id = i;
    b.liquidity = 10.0 * (i + 1);
    b.posted_rate = 0.01 * (3 - i);
    m.banks.push_back(b);
  }
  const MdpObservation o = Observe(m);
  EXPECT_EQ(o.c_max, 30.0);
  EXPECT_EQ(o.c_min, 10.0);
  EXPECT_EQ(o.c_avg, 20.0);
  EXPECT_EQ(o.r_max, 0.03);
  EXPECT_EQ(o.r_min, 0.01);

  std::reverse(m.banks.begin(), m.banks.end());
  EXPECT_EQ(Observe(m), o);

  m.banks.resize(1);
  const MdpObservation one = Observe(m);
  EXPECT_EQ(one.c_max, one.c_min);
  EXPECT_EQ(one.c_avg, one.c_min);
  m.banks[0].alive = false;
  EXPECT_THROW(Observe(m), std::invalid_argument);
}

TEST(Observe, VectorOrder) {
  MdpObservation o{1, 2, 3, 4, 5, 6};  // c_max c_min c_avg r_max r_min r_avg
  const auto v = o.ToVector();
  EXPECT_EQ(v, (std::array<double, 6>{1, 2, 4, 3, 5, 6}));
  EXPECT_EQ(MdpObservation::FromVector(v), o);
}

TEST(TraceIo, RoundTrip) {
  Environment env(Small(30));
  env.Reset(8);
  for (int t = 0; t < 30; ++t) env.Step(t % 2);
  const auto rows = TraceRows(env.trace());
  const auto details = DetailRows(env.trace());
  const std::string dir = ::testing::TempDir();
  const std::string tp = dir + "/rt_trace.csv";
  const std::string dp = dir + "/rt_detail.csv";
  {
    std::ofstream t(tp), d(dp);
    WriteTraceCsv(t, rows);
    WriteDetailCsv(d, details);
  }
  const auto rows2 = ReadTraceCsv(tp);
  const auto details2 = ReadDetailCsv(dp);
  ASSERT_EQ(rows2.size(), rows.size());
  ASSERT_EQ(details2.size(), details.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows2[i].eta, rows[i].eta);
    EXPECT_EQ(rows2[i].reward, rows[i].reward);
    EXPECT_EQ(rows2[i].leverage, rows[i].leverage);
    EXPECT_EQ(details2[i].observation, details[i].observation);
    EXPECT_EQ(details2[i].hub_id, details[i].hub_id);
  }
}

}  // namespace
}  // namespace ibrl
