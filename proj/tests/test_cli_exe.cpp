#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using Catch::Matchers::WithinAbs;

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(TCT_BIN) + " " + args + " > " + tmp_path("tct_cli_log") +
                            " 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Cleanup {
    std::vector<std::string> paths;
    ~Cleanup() {
        for (const auto& p : paths) std::remove(p.c_str());
    }
    const std::string& add(const std::string& p) {
        paths.push_back(p);
        return paths.back();
    }
};

}  // namespace

TEST_CASE("cli: full simulate -> decompose -> validate pipeline") {
    Cleanup gc;
    const std::string inc = gc.add(tmp_path("cli_inc.csv"));
    REQUIRE(run_cli("simulate --model gamma --theta 0 --a 5 --b 5 --lags 1 --n 20000 --seed 9 -o " +
                    inc) == 0);
    REQUIRE(slurp(inc).substr(0, 10) == "lag,value\n");

    const std::string dens = gc.add(tmp_path("cli_dens.csv"));
    const std::string diag = gc.add(tmp_path("cli_diag.json"));
    REQUIRE(run_cli("decompose --input " + inc +
                    " --input-kind increments --theta estimate --omega-max 4 --n-omega 161"
                    " --xi-min 0.01 --xi-max 8 --n-xi 200 --R 2.5 -o " +
                    dens + " --diagnostics " + diag) == 0);
    REQUIRE(slurp(dens).substr(0, 15) == "lag,xi,density\n");
    CHECK(slurp(diag).find("theta_convention") != std::string::npos);

    const std::string met = gc.add(tmp_path("cli_met.json"));
    REQUIRE(run_cli("validate --oracle gamma --a 5 --b 5 --theta 0 --t 1 --n 20000 --seed 9"
                    " --omega-max 4 --n-omega 161 --xi-min 0.01 --xi-max 8 --n-xi 200 --R 2.5"
                    " -o " +
                    met) == 0);
    CHECK(slurp(met).find("\"l1\"") != std::string::npos);
}

TEST_CASE("cli: exit code 2 on config and parse errors") {
    Cleanup gc;
    CHECK(run_cli("simulate --model nosuch -o " + gc.add(tmp_path("cli_x.csv"))) == 2);
    CHECK(run_cli("simulate --model gamma") == 2);  // missing required output
    CHECK(run_cli("decompose --input /nonexistent.csv -o " + gc.add(tmp_path("cli_y.csv"))) == 2);
    CHECK(run_cli("nosuchcommand") == 2);
    CHECK(run_cli("decompose --input x -o y --theta abc") == 2);
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("cli: exit code 3 when every lag fails, 4 on partial failure") {
    Cleanup gc;
    const std::string bad = gc.add(tmp_path("cli_bad.csv"));
    {
        std::ofstream f(bad);
        f << "lag,value\n1,0.2\n1,900\n";
    }
    CHECK(run_cli("decompose --input " + bad + " --theta 0 --omega-max 4 --n-omega 41"
                  " --xi-min 0.01 --xi-max 4 --n-xi 50 --R 2 -o " +
                  gc.add(tmp_path("cli_bad_out.csv"))) == 3);

    const std::string mixed = gc.add(tmp_path("cli_mixed.csv"));
    {
        std::ofstream f(mixed);
        f << "lag,value\n1,0.2\n1,-0.4\n1,0.1\n2,0.3\n2,900\n";
    }
    CHECK(run_cli("decompose --input " + mixed + " --theta 0 --omega-max 4 --n-omega 41"
                  " --xi-min 0.01 --xi-max 4 --n-xi 50 --R 2 -o " +
                  gc.add(tmp_path("cli_mixed_out.csv"))) == 4);
}

TEST_CASE("cli: config file keys with flag override precedence") {
    Cleanup gc;
    const std::string conf = gc.add(tmp_path("cli_conf.ini"));
    {
        std::ofstream f(conf);
        f << "[simulate]\nmodel=gamma\ntheta=0\na=5\nb=5\nlags=1\nn=12\nseed=4\n";
    }
    const std::string out1 = gc.add(tmp_path("cli_conf_a.csv"));
    REQUIRE(run_cli("--config " + conf + " simulate -o " + out1) == 0);
    std::istringstream rows(slurp(out1));
    std::string line;
    int data_rows = -1;  // header
    while (std::getline(rows, line)) ++data_rows;
    CHECK(data_rows == 12);

    // command line wins over the config file
    const std::string out2 = gc.add(tmp_path("cli_conf_b.csv"));
    REQUIRE(run_cli("--config " + conf + " simulate --n 3 -o " + out2) == 0);
    std::istringstream rows2(slurp(out2));
    data_rows = -1;
    while (std::getline(rows2, line)) ++data_rows;
    CHECK(data_rows == 3);
}

TEST_CASE("cli: byte-identical pipeline across runs and TCT_THREADS settings") {
    Cleanup gc;
    const std::string inc = gc.add(tmp_path("cli_det_inc.csv"));
    REQUIRE(run_cli("simulate --model gamma --theta 0.2 --a 5 --b 5 --lags 0.5,1 --n 8000"
                    " --seed 77 -o " +
                    inc) == 0);

    std::vector<std::string> results;
    for (const char* threads : {"1", "8", "1"}) {
        setenv("TCT_THREADS", threads, 1);
        const std::string dens =
            gc.add(tmp_path(std::string("cli_det_dens_") + threads + ".csv"));
        const std::string diag =
            gc.add(tmp_path(std::string("cli_det_diag_") + threads + ".json"));
        REQUIRE(run_cli("decompose --input " + inc +
                        " --theta 0.2 --omega-max 3 --n-omega 121 --xi-min 0.01 --xi-max 6"
                        " --n-xi 120 --R 2 -o " +
                        dens + " --diagnostics " + diag) == 0);
        const std::string met = gc.add(tmp_path(std::string("cli_det_met_") + threads + ".json"));
        REQUIRE(run_cli("validate --oracle gamma --a 5 --b 5 --theta 0.2 --t 1 --n 8000 --seed 77"
                        " --omega-max 3 --n-omega 121 --xi-min 0.01 --xi-max 6 --n-xi 120 --R 2"
                        " -o " +
                        met) == 0);
        results.push_back(slurp(dens) + slurp(diag) + slurp(met));
    }
    unsetenv("TCT_THREADS");
    REQUIRE(results[1] == results[0]);
    REQUIRE(results[2] == results[0]);
}
