#include <gtest/gtest.h>

#include "potsig/potsig.hpp"

using namespace potsig;

TEST(Report, JsonFieldsAndRoundTrip) {
    auto r = sigma_threshold(k4_minus_e(), 6);
    r.elapsed_ms = 3;  // keep the text stable
    auto text = dump_json(to_json(r));
    EXPECT_EQ(text,
              "{\n"
              "  \"pattern\": \"k4e\",\n"
              "  \"n\": 6,\n"
              "  \"computed_sigma\": 20,\n"
              "  \"formula_sigma\": 20,\n"
              "  \"agrees\": true,\n"
              "  \"extremal_sequences\": [\n"
              "    \"3,3,3,3,3,3\"\n"
              "  ],\n"
              "  \"sequences_examined\": "
                  + std::to_string(r.sequences_examined) +
                  ",\n"
                  "  \"elapsed_ms\": 3\n"
                  "}\n");
    EXPECT_EQ(dump_json(ordered_json::parse(text)), text);
}

TEST(Report, JsonNullFormula) {
    auto r = sigma_threshold(cycle_pattern(4), 5);
    auto j = to_json(r);
    EXPECT_TRUE(j["formula_sigma"].is_null());
    EXPECT_EQ(j["computed_sigma"], 14);
    auto text = dump_json(j);
    EXPECT_EQ(dump_json(ordered_json::parse(text)), text);
}

TEST(Report, TextAndCsv) {
    auto r = sigma_threshold(k4_minus_e(), 7);
    r.elapsed_ms = 0;
    auto text = to_text(r);
    EXPECT_NE(text.find("computed_sigma=20\n"), std::string::npos);
    EXPECT_NE(text.find("extremal_sequences=3,3,3,3,3,3,0;6,2,2,2,2,2,2\n"), std::string::npos);
    EXPECT_EQ(std::string(kCsvHeader), "n,pattern,computed_sigma,formula_sigma,agrees,n_extremal,elapsed_ms");
    EXPECT_EQ(to_csv_row(r), "7,k4e,20,20,true,2,0");
    auto c = sigma_threshold(cycle_pattern(4), 5);
    c.elapsed_ms = 0;
    EXPECT_EQ(to_csv_row(c), "5,c4,14,,true," + std::to_string(c.extremal_sequences.size()) + ",0");
}
