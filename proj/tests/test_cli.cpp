#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "mimosim/commands.hpp"

using namespace mimosim;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mimosim_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

fs::path write_file(const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    out << body;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    return cells;
}

const std::string kSisoConfig = R"({
  "nt": 1,
  "nr": 1,
  "nrt": 4,
  "sigma_h2": 0.5,
  "snr_db": [0.0, 2.0],
  "frames": 6,
  "seed": 9,
  "workers": 2
})";

}  // namespace

TEST_CASE("config loading is strict") {
    TempDir dir;

    SUBCASE("valid config round trips") {
        const auto p = write_file(dir.path / "ok.json", kSisoConfig);
        const RunConfigFile cfg = load_run_config(p.string());
        CHECK(cfg.plan.cfg.n_t == 1);
        CHECK(cfg.plan.cfg.n_rt == 4);
        CHECK(cfg.plan.frames == 6);
        CHECK(cfg.plan.master_seed == 9);
        CHECK(cfg.seed_in_config);
        CHECK(cfg.plan.snr_points_db == std::vector<double>{0.0, 2.0});
    }

    SUBCASE("unknown keys are rejected by name") {
        const auto p = write_file(dir.path / "unknown.json",
                                  R"({"nt": 1, "nr": 1, "snr_db": [1.0], "bogus_key": 3})");
        try {
            load_run_config(p.string());
            FAIL("expected an exception");
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
        }
    }

    SUBCASE("inconsistent antenna split is rejected") {
        const auto p = write_file(dir.path / "split.json",
                                  R"({"nt": 4, "nr": 4, "ntot": 32, "snr_db": [1.0]})");
        CHECK_THROWS(load_run_config(p.string()));
    }

    SUBCASE("ntot with one side fills in the other") {
        const auto p = write_file(dir.path / "ntot.json",
                                  R"({"ntot": 32, "nt": 16, "snr_db": [1.0]})");
        const RunConfigFile cfg = load_run_config(p.string());
        CHECK(cfg.plan.cfg.n_r == 16);
    }

    SUBCASE("missing file names the path") {
        const std::string missing = (dir.path / "missing.json").string();
        try {
            load_run_config(missing);
            FAIL("expected an exception");
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find(missing) != std::string::npos);
        }
    }
}

TEST_CASE("ber command") {
    TempDir dir;
    const auto cfg_path = write_file(dir.path / "run.json", kSisoConfig);
    const auto csv_path = dir.path / "out.csv";

    BerOptions opts;
    opts.config_path = cfg_path.string();
    opts.out_csv = csv_path.string();

    std::ostringstream out, err;
    REQUIRE(cmd_ber(opts, out, err) == kExitOk);
    const std::string csv = slurp(csv_path);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 3);  // header + one row per SNR point
    CHECK(lines[0] == "snr_db,frames,bits,errors,ber,ci_low,ci_high,eta_p,sinr_ub_db");

    SUBCASE("eta and the SISO infinity sentinel land in every row") {
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto cells = split_csv(lines[i]);
            REQUIRE(cells.size() == 9);
            CHECK(cells[7] == "0.125");  // N_r = 1, N_rt = 4
            CHECK(cells[8] == "inf");    // upper bound diverges at N_r = 1
        }
    }

    SUBCASE("byte-identical CSV on a repeated run") {
        const auto csv_path2 = dir.path / "out2.csv";
        BerOptions again = opts;
        again.out_csv = csv_path2.string();
        std::ostringstream out2, err2;
        REQUIRE(cmd_ber(again, out2, err2) == kExitOk);
        CHECK(slurp(csv_path2) == csv);
    }

    SUBCASE("command-line overrides beat the config file") {
        BerOptions fast = opts;
        fast.frames = 3;
        fast.out_csv = (dir.path / "fast.csv").string();
        std::ostringstream out2, err2;
        REQUIRE(cmd_ber(fast, out2, err2) == kExitOk);
        const auto rows = split_lines(slurp(dir.path / "fast.csv"));
        const auto cells = split_csv(rows[1]);
        CHECK(cells[1] == "3");
        CHECK(cells[2] == std::to_string(3 * 1001));
    }

    SUBCASE("missing config file exits 1 and names the path") {
        BerOptions bad;
        bad.config_path = (dir.path / "nope.json").string();
        std::ostringstream out2, err2;
        CHECK(cmd_ber(bad, out2, err2) == kExitConfigError);
        CHECK(err2.str().find(bad.config_path) != std::string::npos);
    }

    SUBCASE("snr points beyond the interference-limited bound exit 1") {
        const auto p = write_file(dir.path / "toohigh.json",
                                  R"({"nt": 12, "nr": 20, "nrt": 1, "snr_db": [3.5],
                                      "frames": 2})");
        BerOptions bad;
        bad.config_path = p.string();
        std::ostringstream out2, err2;
        CHECK(cmd_ber(bad, out2, err2) == kExitConfigError);
        CHECK(err2.str().find("snr_db") != std::string::npos);
    }

    SUBCASE("unwritable output path exits 2") {
        BerOptions bad = opts;
        bad.out_csv = (dir.path / "no" / "such" / "dir" / "x.csv").string();
        std::ostringstream out2, err2;
        CHECK(cmd_ber(bad, out2, err2) == kExitRuntimeError);
        CHECK(err2.str().find(*bad.out_csv) != std::string::npos);
    }
}

TEST_CASE("plan command") {
    std::ostringstream out, err;

    SUBCASE("footer carries the stationary point") {
        PlanOptions opts;
        opts.n_tot = 1024;
        opts.n_rt = 1;
        opts.eta_min = 311.75;
        REQUIRE(cmd_plan(opts, out, err) == kExitOk);
        const auto lines = split_lines(out.str());
        REQUIRE(lines.size() == 1 + 1022 + 4);
        CHECK(lines[0] == "nt,sinr_ub_db,eta_p,f");
        CHECK(lines[1023] == "# nt_min,263");
        CHECK(lines[1024] == "# nt_max,400");
        CHECK(lines[1025] == "# stationary_nt,959");
        CHECK(lines[1026] == "# f_minimum_avoidable,true");
    }

    SUBCASE("row at N_t = 25 for N_tot = 32, N_rt = 2 reproduces 12.39 dB") {
        PlanOptions opts;
        opts.n_tot = 32;
        opts.n_rt = 2;
        opts.eta_min = 0.5;
        REQUIRE(cmd_plan(opts, out, err) == kExitOk);
        const auto lines = split_lines(out.str());
        const auto cells = split_csv(lines[25]);  // header + n_t rows, n_t = 25
        REQUIRE(cells.size() == 4);
        CHECK(cells[0] == "25");
        CHECK(std::stod(cells[1]) == doctest::Approx(12.39).epsilon(0.001));
        CHECK(std::stod(cells[2]) == doctest::Approx(1.75));
        // Fig. 3(b) situation: the minimum cannot be avoided.
        CHECK(lines.back() == "# f_minimum_avoidable,false");
    }

    SUBCASE("empty feasible range still exits 0 with an explicit footer") {
        PlanOptions opts;
        opts.n_tot = 64;
        opts.n_rt = 1;
        opts.eta_min = 32.0;
        REQUIRE(cmd_plan(opts, out, err) == kExitOk);
        const auto lines = split_lines(out.str());
        CHECK(lines[63] == "# range,EMPTY");
    }
}

TEST_CASE("validate command") {
    std::ostringstream out, err;

    SUBCASE("too few draws is a usage error") {
        ValidateOptions opts;
        opts.draws = 1000;
        CHECK(cmd_validate(opts, out, err) == kExitConfigError);
    }

    SUBCASE("healthy run passes every moment") {
        ValidateOptions opts;
        opts.n_t = 4;
        opts.n_r = 3;
        opts.n_rt = 2;
        opts.sigma_w_sq = 1.0;
        opts.draws = 20000;
        CHECK(cmd_validate(opts, out, err) == kExitOk);
        CHECK(out.str().find("FAIL") == std::string::npos);
    }

    SUBCASE("corrupted analytic side fails with exit 3") {
        ValidateOptions opts;
        opts.n_t = 4;
        opts.n_r = 3;
        opts.n_rt = 2;
        opts.sigma_w_sq = 1.0;
        opts.draws = 20000;
        opts.corrupt_analytic = true;
        CHECK(cmd_validate(opts, out, err) == kExitValidationFailed);
        CHECK(out.str().find("FAIL") != std::string::npos);
    }
}

namespace {

int run_binary(const std::string& args, const fs::path& capture) {
    const char* bin = std::getenv("MIMOSIM_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " > " + capture.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("installed binary behaves at the argv level") {
    TempDir dir;
    const auto capture = dir.path / "out.txt";

    SUBCASE("missing config file exits 1") {
        CHECK(run_binary("ber --config " + (dir.path / "gone.json").string(), capture) == 1);
        CHECK(slurp(capture).find("gone.json") != std::string::npos);
    }

    SUBCASE("unknown flag exits 1") {
        CHECK(run_binary("plan --ntot 32 --nrt 1 --eta-min 1 --frobnicate", capture) == 1);
    }

    SUBCASE("plan subcommand emits the CSV to stdout") {
        CHECK(run_binary("plan --ntot 32 --nrt 2 --eta-min 0.5", capture) == 0);
        const auto lines = split_lines(slurp(capture));
        CHECK(lines[0] == "nt,sinr_ub_db,eta_p,f");
    }

    SUBCASE("MIMOSIM_SEED provides the default seed") {
        const auto cfg = write_file(dir.path / "noseed.json",
                                    R"({"nt": 1, "nr": 1, "nrt": 1, "snr_db": [2.0],
                                        "frames": 4, "workers": 1})");
        const auto a = dir.path / "a.csv";
        const auto b = dir.path / "b.csv";
        const auto c = dir.path / "c.csv";
        const std::string base = "ber --config " + cfg.string() + " --out ";
        CHECK(run_binary("ber --config " + cfg.string() + " --out " + a.string(), capture) == 0);
        const char* bin = std::getenv("MIMOSIM_BIN");
        REQUIRE(bin != nullptr);
        const std::string env_cmd = "MIMOSIM_SEED=123 " + std::string(bin) + " " + base +
                                    b.string() + " > /dev/null 2>&1";
        REQUIRE(WEXITSTATUS(std::system(env_cmd.c_str())) == 0);
        const std::string env_cmd2 = "MIMOSIM_SEED=123 " + std::string(bin) + " " + base +
                                     c.string() + " --seed 1 > /dev/null 2>&1";
        REQUIRE(WEXITSTATUS(std::system(env_cmd2.c_str())) == 0);
        // Env seed changes the run; an explicit --seed equal to the default
        // restores it.
        CHECK(slurp(a) != slurp(b));
        CHECK(slurp(a) == slurp(c));
    }
}
