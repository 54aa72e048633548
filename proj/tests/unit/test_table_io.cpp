#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "erpclass/error.hpp"
#include "erpclass/table_io.hpp"
#include "fixtures.hpp"

namespace erpclass {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no erpclass::Error thrown";
  return ErrorCode::kIoError;
}

RawTable parse(const std::string& text, TableKind kind) {
  std::istringstream in(text);
  return parse_table(in, kind, "test.csv");
}

std::string demographics_csv(std::size_t n) {
  std::string s = "subject,age,gender,education\n";
  for (std::size_t i = 0; i < n; ++i) {
    s += "S" + std::to_string(i) + "," + std::to_string(20 + i % 40) + "," +
         (i % 2 ? "female" : "male") + ",12\n";
  }
  return s;
}

TEST(TableIo, DemographicsWith81Rows) {
  const auto t = parse(demographics_csv(81), TableKind::kDemographics);
  EXPECT_EQ(t.rows.size(), 81u);
  EXPECT_EQ(t.rows[0].values, (std::vector<double>{20, 0, 12}));
  EXPECT_EQ(t.rows[1].values[1], 1.0);
  EXPECT_FALSE(t.rows[0].group.has_value());
}

TEST(TableIo, EmptyFileIsMissingHeader) {
  EXPECT_EQ(code_of([] { parse("", TableKind::kDemographics); }), ErrorCode::kMissingHeader);
}

TEST(TableIo, HeaderMismatchListsMissingColumns) {
  try {
    parse("subject,age\nS1,30\n", TableKind::kDemographics);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHeaderMismatch);
    EXPECT_NE(std::string(e.what()).find("{gender, education}"), std::string::npos) << e.what();
  }
}

TEST(TableIo, NonNumericCellCarriesLocation) {
  try {
    parse("subject,age,gender,education\nS1,30,male,12\nS2,old,male,12\n",
          TableKind::kDemographics);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonNumericCell);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("test.csv:3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("age"), std::string::npos) << msg;
  }
}

TEST(TableIo, BadCategories) {
  EXPECT_EQ(code_of([] {
              parse("subject,age,gender,education\nS1,30,robot,12\n", TableKind::kDemographics);
            }),
            ErrorCode::kInvalidCategory);
  EXPECT_EQ(code_of([] { parse("subject,group,Fz,FCz,Cz,FC3,FC4,C3,C4,CP3,CP4\nS1,XX,1,2,3,4,5,6,7,8,9\n",
                               TableKind::kEegTrials); }),
            ErrorCode::kInvalidCategory);
}

TEST(TableIo, MissingFile) {
  EXPECT_EQ(code_of([] { load_table("/nonexistent/dir/x.csv", TableKind::kEegTrials); }),
            ErrorCode::kMissingFile);
}

TEST(TableIo, QuotingCrlfBomAndMissingTokens) {
  const auto t = parse("\xEF\xBB\xBFsubject,age,gender,education,extra\r\n"
                       "\"S,1\",NA,F,12,zzz\r\n",
                       TableKind::kDemographics);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].subject, "S,1");
  EXPECT_TRUE(std::isnan(t.rows[0].values[0]));
  EXPECT_EQ(t.rows[0].values[1], 1.0);
}

TEST(TableIo, WriteThenParseRoundTrips) {
  const auto cohort = generate(SynthConfig{.n_hc = 3, .n_sz = 4, .seed = 5});
  for (const RawTable* t : {&cohort.erp, &cohort.eeg, &cohort.demographics}) {
    std::ostringstream out;
    write_table(out, *t);
    const auto back = parse(out.str(), t->kind);
    EXPECT_EQ(back.rows, t->rows);
    EXPECT_EQ(back.header, canonical_header(t->kind));
  }
}

class MergeTest : public ::testing::Test {
 protected:
  SyntheticCohort c = generate(SynthConfig{.n_hc = 4, .n_sz = 5, .seed = 3});
};

TEST_F(MergeTest, UnknownSubjectInEeg) {
  c.eeg.rows.push_back(c.eeg.rows.front());
  c.eeg.rows.back().subject = "GHOST";
  EXPECT_EQ(code_of([&] { merge(c.erp, c.eeg, c.demographics); }), ErrorCode::kUnknownSubject);
}

TEST_F(MergeTest, SubjectWithoutDemographics) {
  c.demographics.rows.erase(c.demographics.rows.begin());
  EXPECT_EQ(code_of([&] { merge(c.erp, c.eeg, c.demographics); }), ErrorCode::kUnknownSubject);
}

TEST_F(MergeTest, DuplicateDemographics) {
  c.demographics.rows.push_back(c.demographics.rows.front());
  EXPECT_EQ(code_of([&] { merge(c.erp, c.eeg, c.demographics); }),
            ErrorCode::kDuplicateDemographics);
}

TEST_F(MergeTest, GroupMismatch) {
  auto& g = c.eeg.rows.front().group;
  g = *g == Label::SZ ? Label::HC : Label::SZ;
  EXPECT_EQ(code_of([&] { merge(c.erp, c.eeg, c.demographics); }), ErrorCode::kGroupMismatch);
}

TEST_F(MergeTest, JoinsDemographicsAndEncodesGender) {
  const auto m = merge(c.erp, c.eeg, c.demographics);
  ASSERT_EQ(m.rows(), 9u);
  const auto& d = c.demographics.rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto it = std::find_if(d.begin(), d.end(),
                                 [&](const RawRow& row) { return row.subject == m.subject_ids()[r]; });
    ASSERT_NE(it, d.end());
    EXPECT_EQ(m.at(r, 47), it->values[0]);
    EXPECT_EQ(m.at(r, 48), it->values[1]);
    EXPECT_TRUE(m.at(r, 48) == 0.0 || m.at(r, 48) == 1.0);
  }
}

TEST_F(MergeTest, RowsWithMissingCellsAreDroppedAndCounted) {
  c.eeg.rows[2].values[4] = std::numeric_limits<double>::quiet_NaN();
  IngestStats stats;
  const auto m = merge(c.erp, c.eeg, c.demographics, &stats);
  EXPECT_EQ(m.rows(), 8u);
  EXPECT_EQ(stats.observation_rows, 9u);
  EXPECT_EQ(stats.dropped_missing, 1u);
}

TEST_F(MergeTest, BroadcastsSingleErpRowOverTrials) {
  auto multi = generate(SynthConfig{.n_hc = 2, .n_sz = 2, .trials_per_subject = 3, .seed = 1});
  RawTable erp = multi.erp;
  erp.rows.clear();
  for (const auto& row : multi.erp.rows) {
    if (std::none_of(erp.rows.begin(), erp.rows.end(),
                     [&](const RawRow& r) { return r.subject == row.subject; })) {
      erp.rows.push_back(row);
    }
  }
  const auto m = merge(erp, multi.eeg, multi.demographics);
  EXPECT_EQ(m.rows(), 12u);
  EXPECT_EQ(m.at(0, 2), m.at(1, 2));
}

TEST(TableIo, ReingestIsBitIdentical) {
  const auto dir = std::filesystem::temp_directory_path() / "erpclass_reingest";
  std::filesystem::create_directories(dir);
  const auto c = generate(SynthConfig{.seed = 11});
  save_table(dir / "erp_averages.csv", c.erp);
  save_table(dir / "eeg_trials.csv", c.eeg);
  save_table(dir / "demographics.csv", c.demographics);
  const auto a = load_dataset(DatasetPaths::in_directory(dir));
  const auto b = load_dataset(DatasetPaths::in_directory(dir));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, merge(c.erp, c.eeg, c.demographics));
  std::filesystem::remove_all(dir);
}

TEST(TableIo, FormatNumberRoundTrips) {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng.below(20)) - 10);
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

}  // namespace
}  // namespace erpclass
