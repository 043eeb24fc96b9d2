#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using json = nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("APERIODIC_CLI");
    REQUIRE(p != nullptr);
    return p;
}

int run(const std::string& args, const std::string& out_file) {
    std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

json run_json(const std::string& args, int expect_rc = 0) {
    std::string out = "/tmp/aperiodic_cli_out.json";
    int rc = run(args, out);
    REQUIRE(rc == expect_rc);
    std::ifstream f(out);
    REQUIRE(f.good());
    return json::parse(f);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("spectrum decide reports the worked example") {
    json j = run_json("spectrum decide --family minus --p 1 --sign minus --digits 0..1");
    CHECK(j["bdl"] == true);
    CHECK(j["xi"]["exact"] == "-5/2 + 3/2*sqrt(5)");
    CHECK(j["kesten"]["bdl"] == true);
    CHECK(j["kesten"]["step"]["exact"] == j["xi"]["exact"]);

    json k = run_json("spectrum decide --family minus --p 2 --sign minus --digits 0..2");
    CHECK(k["bdl"] == true);  // 2 | 2
    json n = run_json("spectrum decide --family minus --p 2 --sign minus --digits 0..1");
    CHECK(n["bdl"] == false);
    CHECK(n["reason"] == "2 does not divide 1 (beta' < 0)");
}

TEST_CASE("spectrum gen with the oracle cross-check") {
    json j = run_json(
        "spectrum gen --family minus --p 1 --sign minus --digits 0..1 "
        "--range -20,20 --oracle --max-degree 12 --out /tmp/cli_pts.csv "
        "--gaps-out /tmp/cli_word.txt");
    CHECK(j["oracle"]["mismatches"].get<int>() <= 2);
    CHECK(j["gaps"][0]["exact"] == "1");
    CHECK(j["gaps"][1]["exact"] == "-1/2 + 1/2*sqrt(5)");

    std::string csv = slurp("/tmp/cli_pts.csv");
    CHECK(csv.rfind("a,b,value,star\n", 0) == 0);
    std::string word = slurp("/tmp/cli_word.txt");
    CHECK(word.find('|') != std::string::npos);

    // byte-identical reruns
    run("spectrum gen --family minus --p 1 --sign minus --digits 0..1 "
        "--range -20,20 --out /tmp/cli_pts2.csv",
        "/tmp/cli_rerun.json");
    CHECK(slurp("/tmp/cli_pts.csv") == slurp("/tmp/cli_pts2.csv"));
}

TEST_CASE("analyze-morphism on the three reference substitutions") {
    json a = run_json("analyze-morphism --rules 'A->AAB;B->AB' --seed 'B|A' --radius 4000");
    CHECK(a["balance_verdict"] == "Balanced");
    CHECK(a["bdl_construction"].contains("f_exact"));
    CHECK(a["empirical"]["classification"] == "LooksBounded");

    json b = run_json(
        "analyze-morphism --rules 'A->C;B->ACCCC;C->CB' --seed 'B|C' --auto-power --radius 4000");
    CHECK(b["power_used"] == 2);
    CHECK(b["balance_verdict"] == "NotBalanced");
    CHECK(b["bdl_construction"].contains("f"));
    CHECK(b["empirical"]["max_abs_f_dot_parikh"].get<double>() < 5.0);

    json c = run_json("analyze-morphism --rules 'A->ABBA;B->AA' --radius 1000");
    CHECK(c["balance_verdict"] == "NotBalanced");
    CHECK(c["bdl_construction"].contains("error"));
}

TEST_CASE("cap subcommands") {
    json d = run_json("cap decide --eps '3/2-1/2*sqrt(5)' --eta '3/2+1/2*sqrt(5)' --window 0,1");
    CHECK(d["bdl"] == true);

    json h = run_json("cap decide --eps '3/2-1/2*sqrt(5)' --eta '3/2+1/2*sqrt(5)' --window 0,1/2");
    CHECK(h["bdl"] == false);

    json t = run_json(
        "cap transform --eps '3/2-1/2*sqrt(5)' --eta '3/2+1/2*sqrt(5)' --window 0,1 "
        "--matrix 0,-1,1,2");
    CHECK(t["eps"] == "1/2 - 1/2*sqrt(5)");
    CHECK(t["scale"]["exact"] == "3/2 + 1/2*sqrt(5)");

    json g = run_json(
        "cap gen --eps '3/2-1/2*sqrt(5)' --eta '3/2+1/2*sqrt(5)' --window 0,1 "
        "--range -30,30 --out /tmp/cli_cap.csv");
    CHECK(g["points"].get<int>() > 10);

    // bad input: exit 1
    CHECK(run("cap decide --eps 'sqrt(5)' --eta 'sqrt(5)' --window 0,1", "/tmp/cli_err.json") == 1);
}

TEST_CASE("discrepancy, witness and grid over files") {
    {
        std::ofstream f("/tmp/cli_lattice.txt");
        for (int n = -3000; n <= 3000; ++n) f << (n + 0.3) << "\n";
    }
    json d = run_json("discrepancy --points /tmp/cli_lattice.txt --xi 1 --horizons doubling:3..11");
    for (double v : d["right_dev"].get<std::vector<double>>()) CHECK(v <= 1.5);
    CHECK(d["classification"] == "LooksBounded");

    json w = run_json("witness --points /tmp/cli_lattice.txt --xi 1 --count 1000 "
                      "--out /tmp/cli_witness.csv");
    CHECK(w["max_displacement"].get<double>() == Catch::Approx(0.3));
    CHECK(slurp("/tmp/cli_witness.csv").rfind("n,x_n,xi_n,displacement\n", 0) == 0);

    json g = run_json("grid --points1 /tmp/cli_lattice.txt --points2 /tmp/cli_lattice.txt "
                      "--u 1,0 --angle 1.2566370614359172 --bound 8 --out /tmp/cli_grid.csv");
    CHECK(g["points"].get<int>() > 50);
    CHECK(slurp("/tmp/cli_grid.csv").rfind("x,y\n", 0) == 0);
}
