#include <gtest/gtest.h>

#include <functional>
#include <sstream>

#include "svadf/csv_io.hpp"
#include "svadf/dgp.hpp"
#include "svadf/error.hpp"

using namespace svadf;

namespace {

ErrorKind kind_of(const std::function<void()>& fn, std::string* message = nullptr) {
    try {
        fn();
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Usage;
}

std::string dated_rows(int count) {
    std::ostringstream out;
    out << "date,close\n";
    Date d = Date::from_ymd(2020, 1, 1);
    for (int i = 0; i < count; ++i) out << d.plus_days(i).to_string() << ',' << 100 + i << '\n';
    return out.str();
}

}  // namespace

TEST(ParseCsv, QuotesCommentsAndBlanks) {
    std::istringstream in("# comment\n\na,\"b,c\"\n1,\"x,y\"\n\n2,z\n");
    const auto t = parse_csv(in);
    ASSERT_EQ(t.header.size(), 2u);
    EXPECT_EQ(t.header[1], "b,c");
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0][1], "x,y");
    EXPECT_EQ(t.line_numbers[1], 6u);
}

TEST(ParseCsv, RaggedRowIsParseError) {
    std::istringstream in("a,b\n1,2\n3\n");
    std::string msg;
    EXPECT_EQ(kind_of([&] { parse_csv(in); }, &msg), ErrorKind::Parse);
    EXPECT_NE(msg.find("line 3"), std::string::npos);
}

TEST(Ingest, ThreeRowFile) {
    std::istringstream in("date,close\n2020-01-01,100\n2020-01-02,101\n2020-01-03,102\n");
    IngestOptions opt;
    opt.min_rows = 3;
    const auto s = ingest_csv(in, opt);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s.values()[2], 102.0);
    EXPECT_EQ(s.dates()[0].to_string(), "2020-01-01");
}

TEST(Ingest, TooFewRowsIsDataError) {
    std::istringstream in(dated_rows(19));
    EXPECT_EQ(kind_of([&] { ingest_csv(in); }), ErrorKind::Data);
}

TEST(Ingest, BadPriceCitesLine) {
    std::string text = dated_rows(30);
    // Line 17 holds the 16th data row.
    std::size_t pos = 0;
    for (int i = 0; i < 16; ++i) pos = text.find('\n', pos) + 1;
    const std::size_t comma = text.find(',', pos);
    const std::size_t eol = text.find('\n', pos);
    text.replace(comma + 1, eol - comma - 1, "12x");
    std::istringstream in(text);
    std::string msg;
    EXPECT_EQ(kind_of([&] { ingest_csv(in); }, &msg), ErrorKind::Parse);
    EXPECT_NE(msg.find("line 17"), std::string::npos) << msg;
}

TEST(Ingest, MissingColumnNamed) {
    std::istringstream in("date,price\n2020-01-01,1\n");
    std::string msg;
    EXPECT_EQ(kind_of([&] { ingest_csv(in); }, &msg), ErrorKind::Schema);
    EXPECT_NE(msg.find("close"), std::string::npos);
}

TEST(Ingest, CustomColumnsAndUnsortedInput) {
    std::istringstream in("day,px\n2020-01-03,3\n2020-01-01,1\n2020-01-02,2\n");
    IngestOptions opt{"day", "px", 3};
    const auto s = ingest_csv(in, opt);
    EXPECT_EQ(std::vector<double>(s.values().begin(), s.values().end()), (std::vector<double>{1, 2, 3}));
}

TEST(Ingest, DuplicateDateIsDataError) {
    std::istringstream in("date,close\n2020-01-01,1\n2020-01-02,2\n2020-01-02,3\n");
    IngestOptions opt;
    opt.min_rows = 3;
    std::string msg;
    EXPECT_EQ(kind_of([&] { ingest_csv(in, opt); }, &msg), ErrorKind::Data);
    EXPECT_NE(msg.find("2020-01-02"), std::string::npos);
}

TEST(Ingest, MissingFileIsIoError) {
    EXPECT_EQ(kind_of([] { ingest_csv(std::filesystem::path("/nonexistent/x.csv")); }), ErrorKind::Io);
}

TEST(SeriesCsv, SimulatedRoundTripIsExact) {
    dgp::DgpSpec spec;
    spec.n = 300;
    spec.bubble = dgp::BubbleSpec{0.3, 0.6, 1.0, 0.5};
    spec.vol = dgp::VolSpec::log_ar1(0.5);
    spec.seed = 21;
    const auto x = dgp::simulate(spec);
    std::stringstream buf;
    write_series_csv(buf, x, 21);
    IngestOptions opt;
    opt.date_column = "";
    const auto back = ingest_csv(buf, opt);
    ASSERT_EQ(back.size(), x.size());
    for (std::size_t t = 0; t < x.size(); ++t) ASSERT_EQ(back.values()[t], x.values()[t]);
}

TEST(SeriesCsv, DatedRoundTrip) {
    std::istringstream in(dated_rows(25));
    const auto s = ingest_csv(in);
    std::stringstream buf;
    write_series_csv(buf, s);
    const auto back = ingest_csv(buf);
    EXPECT_EQ(back.dates(), s.dates());
}

TEST(Numbers, FormatParseRoundTrip) {
    for (double v : {0.1, -1e-300, 123456789.125, 1.0 / 3.0}) EXPECT_EQ(parse_number(format_number(v), 1), v);
    EXPECT_THROW(parse_number("1.5abc", 4), Error);
    EXPECT_EQ(provenance_line(5).rfind("# svadf ", 0), 0u);
}
