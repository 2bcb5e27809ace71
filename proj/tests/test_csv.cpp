#include <doctest.h>

#include "testutil.hpp"
#include "typdiv/csv.hpp"
#include "typdiv/error.hpp"

using namespace typdiv;

TEST_CASE("csv parses quoted fields, CRLF and embedded separators") {
    auto rows = csv::parse("a,b,c\r\n\"x,1\",\"he said \"\"hi\"\"\",\"line\nbreak\"\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].fields == std::vector<std::string>{"a", "b", "c"});
    CHECK(rows[1].fields[0] == "x,1");
    CHECK(rows[1].fields[1] == "he said \"hi\"");
    CHECK(rows[1].fields[2] == "line\nbreak");
}

TEST_CASE("csv skips blank lines and keeps line numbers") {
    auto rows = csv::parse("h1,h2\n\na,b\n\n\nc,d\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].line == 3);
    CHECK(rows[2].line == 6);
}

TEST_CASE("csv strips a UTF-8 BOM") {
    auto rows = csv::parse("\xEF\xBB\xBFh1,h2\na,b\n");
    CHECK(rows[0].fields[0] == "h1");
}

TEST_CASE("table rejects ragged rows with the line number") {
    CHECK_THROWS_WITH_AS(csv::Table::from_string("a,b\n1,2\n3\n", "t.csv"),
                         doctest::Contains("t.csv:3"), DataError);
}

TEST_CASE("table reports missing columns and empty input") {
    auto table = csv::Table::from_string("a,b\n1,2\n", "t.csv");
    CHECK(table.column("b") == 1);
    CHECK(!table.find_column("c").has_value());
    CHECK_THROWS_AS(table.column("c"), DataError);
    CHECK_THROWS_AS(csv::Table::from_string("", "empty.csv"), DataError);
}

TEST_CASE("table reads from disk and missing files raise io errors") {
    testutil::TempDir dir;
    auto p = dir.file("x.csv", "a,b\n1,2\n");
    auto table = csv::Table::read(p);
    CHECK(table.rows().size() == 1);
    CHECK_THROWS_AS(csv::Table::read(dir.path() / "nope.csv"), IoError);
}
