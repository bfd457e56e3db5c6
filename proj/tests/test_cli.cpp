#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ncode_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string("\"") + NCODE_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

fs::path small_config() {
    const fs::path path = work_dir() / "small.json";
    write(path, R"({"synth_n": 120, "synth_d": 12, "c_grid": [4, 8, 16], "num_seeds": 1,
                    "pdl_images": 20, "final_c_grid": [4], "kmeans_iters": 5})");
    return path;
}

TEST(Cli, SynthThenNystromEval) {
    const fs::path data = work_dir() / "synth.csv";
    ASSERT_EQ(run("synth --d 6 --k 2 --n 40 --classes 2 --out " + data.string()), 0);
    const fs::path out = work_dir() / "nys.json";
    ASSERT_EQ(run("--out " + out.string() + " nystrom-eval --data " + data.string() + " --labels --c 4 --c 8 --c 16"),
              0);
    const auto j = nlohmann::json::parse(read(out));
    EXPECT_EQ(j.at("samples"), 40);
    EXPECT_EQ(j.at("points").size(), 3u);
}

TEST(Cli, EncodeWithSampledDictionary) {
    const fs::path data = work_dir() / "enc_in.csv";
    write(data, "1,0\n0,1\n1,1\n");
    const fs::path out = work_dir() / "enc_out.csv";
    ASSERT_EQ(run("--out " + out.string() + " encode --data " + data.string() + " --sample 2"), 0);
    std::istringstream in(read(out));
    int rows = 0;
    for (std::string line; std::getline(in, line);) {
        ++rows;
    }
    EXPECT_EQ(rows, 3);
}

TEST(Cli, CurveCsvAndPdlJson) {
    const fs::path cfg = small_config();
    const fs::path curve = work_dir() / "curve.csv";
    ASSERT_EQ(run("--config " + cfg.string() + " --format csv --out " + curve.string() + " curve"), 0);
    EXPECT_EQ(read(curve).rfind("c,train_acc,test_acc,pred_train,pred_test,code_err,kernel_err,bound_eq1", 0), 0u);
    const fs::path pdl = work_dir() / "pdl.json";
    ASSERT_EQ(run("--config " + cfg.string() + " --out " + pdl.string() + " pdl"), 0);
    EXPECT_EQ(nlohmann::json::parse(read(pdl)).at("rows").size(), 2u);
}

TEST(Cli, ArgumentErrorsExitTwo) {
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("bogus"), 2);
    EXPECT_EQ(run("--format xml curve"), 2);
    const fs::path bad = work_dir() / "unknown_key.json";
    write(bad, R"({"c_grdi": [8, 16, 32]})");
    EXPECT_EQ(run("--config " + bad.string() + " curve"), 2);
    const fs::path degenerate = work_dir() / "degenerate.json";
    write(degenerate, R"({"c_grid": [8, 8, 16]})");
    EXPECT_EQ(run("--config " + degenerate.string() + " curve"), 2);
    EXPECT_EQ(run("--config " + (work_dir() / "missing.json").string() + " curve"), 2);
}

TEST(Cli, FormatErrorsExitThree) {
    const fs::path ragged = work_dir() / "ragged.csv";
    write(ragged, "1,2,3\n4,5\n");
    EXPECT_EQ(run("nystrom-eval --data " + ragged.string()), 3);
    EXPECT_EQ(run("encode --data " + (work_dir() / "absent.csv").string() + " --sample 1"), 3);
}

}  // namespace
