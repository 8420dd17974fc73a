#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "commands.hpp"
#include "output.hpp"
#include "symfp/error.hpp"

using namespace symfp;
using namespace symfp::cli;

namespace {

Config small(const std::string& name) {
    Config c = default_config(name);
    if (name == "rankdist") {
        c.n = 30;
        c.trials = 300;
    } else if (name == "walk") {
        c.n = 40;
        c.trials = 100;
    } else if (name == "chain") {
        c.trials = 2000;
    } else if (name == "anticonc") {
        c.trials = 3;
    } else if (name == "halasz") {
        c.trials = 5;
    } else if (name == "badset") {
        c.n = 4;
    } else if (name == "roots") {
        c.n = 10;
        c.trials = 50;
    } else if (name == "irred") {
        c.n = 6;
        c.trials = 20;
    } else if (name == "structure") {
        c.n = 40;
        c.trials = 20;
    }
    return c;
}

}  // namespace

TEST_CASE("format_double round-trips and spells out non-finite values") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(INFINITY) == "inf");
    CHECK(format_double(-INFINITY) == "-inf");
    for (double x : {1.0 / 3.0, 6.02214076e23, 2.2250738585072014e-308, 0.63900457663747778})
        CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("csv_field quoting") {
    CHECK(csv_field("abc") == "abc");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_field("") == "");
}

TEST_CASE("format_cell") {
    CHECK(format_cell(Cell{}) == "");
    CHECK(format_cell(Cell{true}) == "true");
    CHECK(format_cell(Cell{std::int64_t{-3}}) == "-3");
    CHECK(format_cell(Cell{std::uint64_t{18446744073709551615ULL}}) == "18446744073709551615");
    CHECK(format_cell(Cell{0.5}) == "0.5");
    CHECK(format_cell(Cell{std::string("x")}) == "x");
}

TEST_CASE("JSON writer keeps 17 significant digits and nulls non-finite values") {
    Json j = Json::object();
    j["a"] = 0.1;
    j["b"] = std::numeric_limits<double>::quiet_NaN();
    j["c"] = Json::array({1, "s"});
    const auto text = to_json_text(j);
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    CHECK(text.find("null") != std::string::npos);
    const auto back = Json::parse(text);
    CHECK(back["a"].get<double>() == 0.1);
    CHECK(back["b"].is_null());
    CHECK(back["c"][1] == "s");
}

TEST_CASE("write_csv and write_json layouts") {
    Report r;
    r.command = "demo";
    r.meta["seed"] = 7;
    r.columns = {"k", "value"};
    r.add_row({std::int64_t{0}, 0.25});
    r.add_row({std::int64_t{1}, Cell{}});
    r.summary["total"] = 2;
    r.checks.push_back({"demo check", false, "x"});
    std::ostringstream csv;
    write_csv(csv, r);
    const auto text = csv.str();
    CHECK(text.find("# command: demo") != std::string::npos);
    CHECK(text.find("# seed: 7") != std::string::npos);
    CHECK(text.find("# check demo check: FAIL (x)") != std::string::npos);
    CHECK(text.find("k,value\r\n0,0.25\r\n1,\r\n") != std::string::npos);
    CHECK(csv_rows(r) == "k,value\r\n0,0.25\r\n1,\r\n");

    std::ostringstream js;
    write_json(js, r);
    const auto j = Json::parse(js.str());
    CHECK(j["meta"]["command"] == "demo");
    CHECK(j["meta"]["summary"]["total"] == 2);
    CHECK(j["meta"]["checks"][0]["passed"] == false);
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][0]["value"].get<double>() == 0.25);
    CHECK(j["rows"][1]["value"].is_null());
}

TEST_CASE("parse_primes") {
    using V = std::vector<std::uint64_t>;
    CHECK(parse_primes({"3,5"}) == V{3, 5});
    CHECK(parse_primes({"3", "7"}) == V{3, 7});
    CHECK(parse_primes({"2:13"}) == V{3, 5, 7, 11, 13});
    CHECK(parse_primes({"5:101"}).size() == 24);
    CHECK_THROWS_AS(parse_primes({"4"}), InvalidArgument);
    CHECK_THROWS_AS(parse_primes({"2"}), InvalidArgument);
    CHECK_THROWS_AS(parse_primes({"abc"}), InvalidArgument);
    CHECK_THROWS_AS(parse_primes({"3x"}), InvalidArgument);
    CHECK_THROWS_AS(parse_primes({"9:3"}), InvalidArgument);
}

TEST_CASE("parse_range and parse_integers") {
    CHECK(parse_range("2:5") == std::pair<std::size_t, std::size_t>{2, 5});
    CHECK_THROWS_AS(parse_range("5:2"), InvalidArgument);
    CHECK_THROWS_AS(parse_range("5"), InvalidArgument);
    CHECK_THROWS_AS(parse_range("a:b"), InvalidArgument);
    CHECK(parse_integers("0,-1,2") == std::vector<std::int64_t>{0, -1, 2});
    CHECK_THROWS_AS(parse_integers("1,x"), InvalidArgument);
    CHECK_THROWS_AS(parse_integers("1.5"), InvalidArgument);
}

TEST_CASE("every command runs at a small size and echoes its configuration") {
    for (const auto& name : command_names()) {
        CAPTURE(name);
        const auto cfg = small(name);
        const auto r = run_command(cfg);
        CHECK(r.command == name);
        CHECK(r.meta["tool"] == "symfp");
        CHECK(r.meta["config"]["command"] == name);
        CHECK(r.meta["config"]["n"] == cfg.n);
        CHECK_FALSE(r.columns.empty());
        CHECK_FALSE(r.rows.empty());
        for (const auto& row : r.rows) REQUIRE(row.size() == r.columns.size());
        CHECK_FALSE(r.checks.empty());
    }
    CHECK_THROWS_AS(default_config("nope"), InvalidArgument);
    Config bad = default_config("rankdist");
    bad.command = "nope";
    CHECK_THROWS_AS(run_command(bad), InvalidArgument);
}

TEST_CASE("command errors map to the library error types") {
    auto c = small("rankdist");
    c.trials = 0;
    CHECK_THROWS_AS(run_command(c), InvalidArgument);
    auto a = small("anticonc");
    a.n = 200;
    a.k = 2;
    a.samples = 0;
    CHECK_THROWS_AS(run_command(a), Error);
    auto b = small("badset");
    b.n = 13;
    CHECK_THROWS_AS(run_command(b), BudgetExceeded);
}

TEST_CASE("rows do not depend on the worker count") {
    for (const std::string name : {"rankdist", "walk", "roots", "irred", "structure", "halasz"}) {
        CAPTURE(name);
        auto one = small(name);
        auto many = one;
        many.workers = 4;
        CHECK(csv_rows(run_command(one)) == csv_rows(run_command(many)));
    }
}

TEST_CASE("adding a prime leaves the other primes' samples unchanged") {
    auto a = small("rankdist");
    a.primes = {3};
    auto b = a;
    b.primes = {3, 5};
    const auto ra = run_command(a), rb = run_command(b);
    // Rows for p = 3 come first in both.
    for (std::size_t i = 0; i < ra.rows.size(); ++i) CHECK(format_cell(ra.rows[i][4]) == format_cell(rb.rows[i][4]));
}

TEST_CASE("anticonc accepts explicit vectors") {
    auto c = small("anticonc");
    c.primes = {5};
    c.vectors = {"1,1,1,1", "0,2,0,3"};
    const auto r = run_command(c);
    REQUIRE(r.rows.size() == 2);
    CHECK(format_cell(r.rows[0][4]) == "4");  // support
    CHECK(format_cell(r.rows[1][4]) == "2");
    CHECK(r.all_passed());
}
