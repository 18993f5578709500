#include <doctest.h>

#include <nibbler/errors.hh>
#include <nibbler/serialize.hh>
#include <nibbler/sweep.hh>

#include "fixtures.hh"
#include "oracles.hh"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nibbler;
using std::string;
using std::vector;

namespace fs = std::filesystem;

namespace
{
    auto scratch(const string & name) -> string
    {
        auto dir = fs::path{ NIBBLER_TEST_SCRATCH } / name;
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir.string();
    }

    auto config_text(const string & dir, const string & grid) -> string
    {
        return R"({"output_dir": ")" + dir + R"(", "threads": 2, "grid": )" + grid + "}";
    }

    auto lines(const string & text) -> vector<string>
    {
        vector<string> r;
        std::istringstream in{ text };
        for (string line ; std::getline(in, line) ; )
            r.push_back(line);
        return r;
    }

    /// Drops the trailing wall-time field.
    auto without_time(const string & row) -> string
    {
        return row.substr(0, row.rfind(',') + 1);
    }
}

TEST_CASE("cover and colouring JSON round trip")
{
    auto c = random_cover(Graph::complete(4), 3, 2);
    auto back = parse_cover_json(cover_to_json(c).dump());
    CHECK(back.base == c.base);
    CHECK(back.cover == c.cover);
    CHECK(back.lists == c.lists);
    CHECK(back.owner == c.owner);

    auto named = identity_list_cover(Graph::complete(3), 2);
    CHECK(parse_cover_json(cover_to_json(named).dump()).colour_names == named.colour_names);

    PartialColouring phi{ vector<Colour>{ 0, -1, 7 } };
    CHECK(parse_colouring_json(colouring_to_json(phi).dump()) == phi);

    CHECK_THROWS_AS(parse_cover_json("[]"), InvalidInput);
    CHECK_THROWS_AS(parse_cover_json(R"({"base":{"n":2,"edges":[]},"cover":{"n":0,"edges":[]},"lists":[[]]})"), InvalidInput);
    CHECK_THROWS_AS(parse_colouring_json(R"({"colouring":[0,-2]})"), InvalidInput);
    CHECK_THROWS_AS(parse_colouring_json(R"({"colour":[0]})"), InvalidInput);
    CHECK_THROWS_AS(read_cover_file("/nonexistent/cover.json"), IoError);
}

TEST_CASE("pattern specs")
{
    CHECK(pattern_from_spec("K3").graph() == Graph::complete(3));
    CHECK(pattern_from_spec("C6").aut_count() == 12);
    CHECK(pattern_from_spec("P4").graph().number_of_edges() == 3);
    CHECK(pattern_from_spec("K2,2").s_t() == std::pair{ 2, 2 });
    CHECK(pattern_from_spec("K_{3,2}").s_t() == std::pair{ 3, 2 });
    CHECK(pattern_from_spec("K2,2,1").graph().number_of_edges() == 8);
    CHECK_THROWS_AS(pattern_from_spec("/nonexistent/pattern.json"), IoError);
}

TEST_CASE("file verifier accepts proper colourings and names conflicts")
{
    auto dir = scratch("verifier");
    auto c = fixtures::bowtie_cover();
    write_text_file(dir + "/cover.json", cover_to_json(c).dump());

    // a1 c0 e1 d0 c1 b0 is a 6-cycle; the first colours a0 b0 c0 d0 e0 only meet at b0 ... none: b0 = 2 meets a1 and c1
    PartialColouring good{ vector<Colour>{ 0, 2, 4, 7, 8 } };
    CHECK(oracle::proper_total(c, good));
    write_text_file(dir + "/good.json", colouring_to_json(good).dump());
    CHECK(verify_colouring_files(dir + "/cover.json", dir + "/good.json").ok);

    PartialColouring bad{ vector<Colour>{ 1, 2, 4, 7, 8 } };
    write_text_file(dir + "/bad.json", colouring_to_json(bad).dump());
    auto r = verify_colouring_files(dir + "/cover.json", dir + "/bad.json");
    CHECK(! r.ok);
    CHECK(r.conflict == std::pair{ 1, 2 });
    CHECK(r.message.find("colours 1 and 2") != string::npos);

    PartialColouring partial{ vector<Colour>{ 0, -1, 4, 7, 8 } };
    auto p = verify_colouring(c, partial);
    CHECK(! p.ok);
    CHECK(p.vertex == 1);

    PartialColouring off_list{ vector<Colour>{ 0, 4, 4, 7, 8 } };
    CHECK(! verify_colouring(c, off_list).ok);
    CHECK(! verify_colouring(c, PartialColouring{ 3 }).ok);
}

TEST_CASE("sweep config schema")
{
    CHECK_THROWS_AS(parse_sweep_config("{}"), InvalidInput);
    CHECK_THROWS_AS(parse_sweep_config(config_text("x", R"([{"seeds": [1]}])")), InvalidInput);
    CHECK_THROWS_AS(parse_sweep_config(config_text("x", R"([{"generator": {"type": "nope"}, "seeds": [1]}])")), InvalidInput);
    CHECK_THROWS_AS(parse_sweep_config(config_text("x", R"([{"generator": {"type": "gnp", "n": 5}, "seeds": [1]}])")), InvalidInput);
    CHECK_THROWS_AS(parse_sweep_config(config_text("x", R"([{"generator": {"type": "edgeless", "n": 5}}])")), InvalidInput);
    CHECK_THROWS_AS(parse_sweep_config(config_text("x", R"([{"generator": {"type": "edgeless", "n": 5}, "seeds": [1], "cover": "odd"}])")), InvalidInput);
    CHECK_THROWS_AS(parse_sweep_config(config_text("x", R"([{"generator": {"type": "edgeless", "n": 5}, "seeds": []}])")), InvalidInput);
    CHECK_THROWS_AS(parse_sweep_config(R"({"output_dir": "x", "threads": 0})"), InvalidInput);

    auto config = parse_sweep_config(config_text("x",
                R"([{"generator": {"type": "edgeless", "n": 5}, "epsilon": [0.1, 0.5], "k": 2, "seeds": [1, 2, 3]}])"));
    CHECK(config.runs.size() == 6);
    CHECK(config.runs[0].point == 0);
    CHECK(config.runs[3].point == 1);
    CHECK(config.runs[3].epsilon == 0.5);
    CHECK(config.runs[5].seed == 3);
}

TEST_CASE("empty grid writes the header only")
{
    auto dir = scratch("empty");
    auto rows = run_sweep(parse_sweep_config(config_text(dir, "[]")));
    CHECK(rows.empty());
    CHECK(read_text_file(dir + "/summary.csv") == sweep_csv_header() + "\n");
}

TEST_CASE("single trivial instance gives one verified success")
{
    auto dir = scratch("trivial");
    auto rows = run_sweep(parse_sweep_config(config_text(dir,
                    R"([{"generator": {"type": "edgeless", "n": 4}, "q": 1, "seeds": [7]}])")));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].success);
    CHECK(rows[0].status == "success");
    CHECK(rows[0].point_success_rate == 1.0);
    auto stem = dir + "/runs/" + rows[0].run_id;
    CHECK(verify_colouring_files(stem + ".cover.json", stem + ".colouring.json").ok);
    CHECK(fs::exists(stem + ".trace.json"));
    CHECK(lines(read_text_file(dir + "/summary.csv")).size() == 2);
}

TEST_CASE("missing graph files are I/O errors")
{
    auto dir = scratch("missing");
    auto config = parse_sweep_config(config_text(dir,
                R"([{"generator": {"type": "file", "path": "/nonexistent/g.json"}, "q": 3, "seeds": [1]}])"));
    CHECK_THROWS_AS(run_sweep(config), IoError);
}

TEST_CASE("planted sweep: every success is verified from files, success rate per point")
{
    auto dir = scratch("planted");
    auto rows = run_sweep(parse_sweep_config(config_text(dir, R"([
        {"generator": {"type": "planted", "n": 40, "target_k": 10, "pattern": "K2,2", "degree_budget": 6},
         "cover": "random", "q": "auto", "s": 2, "t": 2, "epsilon": 0.5, "k": 10, "retries": 5,
         "seeds": [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20]}])")));
    REQUIRE(rows.size() == 20);
    int successes = 0;
    for (auto & r : rows) {
        CHECK(r.point == 0);
        CHECK(r.measured_k <= 10);
        CHECK(r.point_success_rate == rows[0].point_success_rate);
        auto stem = dir + "/runs/" + r.run_id;
        if (r.success) {
            ++successes;
            auto c = read_cover_file(stem + ".cover.json");
            auto phi = read_colouring_file(stem + ".colouring.json");
            CHECK(oracle::proper_total(c, phi));
        }
    }
    CHECK(rows[0].point_success_rate == doctest::Approx(successes / 20.0));
    MESSAGE("planted (10, K2,2) sweep success rate: " << successes << "/20");
}

TEST_CASE("sweep report matches the golden file")
{
    auto dir = scratch("golden");
    auto config = read_text_file(string{ NIBBLER_GOLDEN_DIR } + "/sweep_config.json");
    auto pos = config.find("@OUT@");
    REQUIRE(pos != string::npos);
    config.replace(pos, 5, dir);
    run_sweep(parse_sweep_config(config));

    auto got = lines(read_text_file(dir + "/summary.csv"));
    auto want = lines(read_text_file(string{ NIBBLER_GOLDEN_DIR } + "/sweep_summary.csv"));
    REQUIRE(got.size() == want.size());
    CHECK(got[0] == want[0]);
    for (std::size_t i = 1 ; i < got.size() ; ++i)
        CHECK(without_time(got[i]) == without_time(want[i]));
}
