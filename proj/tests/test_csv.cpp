#include <gtest/gtest.h>

#include <sstream>

#include "minrel/csv.hpp"
#include "minrel/synth.hpp"

using namespace minrel;

TEST(Csv, ReadsHeaderAndValues) {
    const auto r = csv::read_string("x, y\n1,2\n# comment\n3.5,-4e-1\r\n\n");
    EXPECT_EQ(r.data.names(), (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(r.data.rows(), 2u);
    EXPECT_EQ(r.data.column("y")[1], -0.4);
    EXPECT_EQ(r.dropped_rows, 0u);
}

TEST(Csv, BadCellNamesRowAndColumn) {
    try {
        csv::read_string("x,y\n1,2\n3,abc\n");
        FAIL() << "expected a parse error";
    } catch (const InvalidInput& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
        EXPECT_NE(msg.find("'y'"), std::string::npos) << msg;
        EXPECT_NE(msg.find("abc"), std::string::npos) << msg;
    }
}

TEST(Csv, MissingValuesFollowPolicy) {
    const std::string text = "a,b\n1,2\nNA,3\n4,\n5,6\n7,nan\n8,9\n";
    EXPECT_THROW(csv::read_string(text), InvalidInput);
    const auto r = csv::read_string(text, csv::NaPolicy::drop_rows);
    EXPECT_EQ(r.dropped_rows, 3u);
    EXPECT_EQ(r.data.column("a").values()[2], 8.0);
    EXPECT_EQ(r.data.rows(), 3u);
}

TEST(Csv, StructuralErrors) {
    EXPECT_THROW(csv::read_string(""), InvalidInput);
    EXPECT_THROW(csv::read_string("a,b\n1,2,3\n"), InvalidInput);
    EXPECT_THROW(csv::read_string("a,a\n1,2\n3,4\n"), InvalidInput);
    EXPECT_THROW(csv::read_string("a,b\n1,2\n"), InvalidInput); // m < 2
    EXPECT_THROW(csv::read_file("/nonexistent/file.csv"), IoError);
    EXPECT_THROW(csv::parse_na_policy("skip"), InvalidInput);
}

TEST(Csv, WrittenDataRoundTripsToPrintedPrecision) {
    const auto g = gen_multiplication(50, 7);
    std::ostringstream out;
    csv::write(out, g.data);
    const auto back = csv::read_string(out.str()).data;
    ASSERT_EQ(back.names(), g.data.names());
    for (std::size_t c = 0; c < back.cols(); ++c) {
        for (std::size_t i = 0; i < back.rows(); ++i) {
            const double orig = g.data.column(c)[i];
            EXPECT_NEAR(back.column(c)[i], orig, std::abs(orig) * 1e-11);
        }
    }
    for (std::size_t i = 0; i < back.rows(); ++i) {
        const double a = back.column("A")[i];
        EXPECT_NEAR(a, back.column("B")[i] * back.column("C")[i], std::abs(a) * 1e-11);
    }
}

TEST(Csv, FormatNumber) {
    EXPECT_EQ(csv::format_number(0.5), "0.5");
    EXPECT_EQ(csv::format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(csv::format_number(-2.0), "-2");
}
