// End-to-end tests driving the installed command-line binary.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "kexp/io.hpp"

using namespace kexp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("kexp_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string cli() { return KEXP_CLI_PATH; }

int run(const std::string& args, const std::string& stdout_file = "/dev/null") {
    const std::string cmd = cli() + " " + args + " >" + stdout_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string make_dataset(const TempDir& dir) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> noise(0.0, 0.5);
    DataMatrix m(60, 3);
    for (std::size_t i = 0; i < 60; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            m(i, j) = noise(rng) + (i < 30 ? 0.0 : 6.0);
    const auto path = dir.file("data.csv");
    write_csv_matrix(path, m);
    return path;
}

}  // namespace

TEST_CASE("cluster subcommand") {
    TempDir dir;
    const auto data = make_dataset(dir);

    SUBCASE("fixed tau 0.5 and kmeans write identical label files") {
        CHECK(run("cluster --input " + data +
                  " --k 2 --mode fixed --tau s:0.5 --seed 4 --labels-out " +
                  dir.file("lf.csv") + " --centers-out " + dir.file("cf.csv")) == 0);
        CHECK(run("cluster --input " + data +
                  " --k 2 --mode kmeans --seed 4 --labels-out " +
                  dir.file("lk.csv") + " --centers-out " + dir.file("ck.csv")) == 0);
        CHECK(read_bytes(dir.file("lf.csv")) == read_bytes(dir.file("lk.csv")));
    }
    SUBCASE("adaptive separates the two blobs") {
        CHECK(run("cluster --input " + data +
                  " --k 2 --mode adaptive --seed 1 --labels-out " +
                  dir.file("la.csv") + " --centers-out " + dir.file("ca.csv") +
                  " --tau-out " + dir.file("ta.csv"),
                  dir.file("out.txt")) == 0);
        const auto labels = read_labels_csv(dir.file("la.csv"));
        for (std::size_t i = 1; i < 30; ++i) {
            CHECK(labels[i] == labels[0]);
            CHECK(labels[30 + i] == labels[30]);
        }
        CHECK(labels[0] != labels[30]);
        const auto tau = read_csv_matrix(dir.file("ta.csv"));
        CHECK(tau.rows() == 2);
        CHECK(tau.cols() == 3);
        const auto text = read_bytes(dir.file("out.txt"));
        CHECK(text.find("objective ") != std::string::npos);
        CHECK(text.find("converged true") != std::string::npos);
        CHECK(text.find("silhouette ") != std::string::npos);
    }
    SUBCASE("repeated runs are byte-identical") {
        for (int rep = 0; rep < 2; ++rep)
            CHECK(run("cluster --input " + data +
                      " --k 3 --mode adaptive --seed 7 --labels-out " +
                      dir.file("l" + std::to_string(rep) + ".csv") +
                      " --centers-out " +
                      dir.file("c" + std::to_string(rep) + ".csv")) == 0);
        CHECK(read_bytes(dir.file("l0.csv")) == read_bytes(dir.file("l1.csv")));
        CHECK(read_bytes(dir.file("c0.csv")) == read_bytes(dir.file("c1.csv")));
    }
    SUBCASE("usage errors") {
        CHECK(run("cluster --input " + data +
                  " --k 2 --mode fixed --labels-out " + dir.file("l.csv") +
                  " --centers-out " + dir.file("c.csv")) != 0);
        CHECK(run("cluster --input " + data +
                  " --k 2 --mode kmeans --tau s:0.3 --labels-out " +
                  dir.file("l.csv") + " --centers-out " + dir.file("c.csv")) != 0);
        CHECK(run("cluster --input " + dir.file("missing.csv") +
                  " --k 2 --mode kmeans --labels-out " + dir.file("l.csv") +
                  " --centers-out " + dir.file("c.csv")) != 0);
    }
}

TEST_CASE("simulate subcommand") {
    TempDir dir;
    const std::string flags =
        " --family gaussian --n 31 --p 4 --kclusters 3 --seed 9 ";
    CHECK(run("simulate" + flags + "--data-out " + dir.file("d1.csv") +
              " --labels-out " + dir.file("l1.csv")) == 0);
    CHECK(run("simulate" + flags + "--data-out " + dir.file("d2.csv") +
              " --labels-out " + dir.file("l2.csv")) == 0);
    CHECK(read_bytes(dir.file("d1.csv")) == read_bytes(dir.file("d2.csv")));
    CHECK(read_bytes(dir.file("l1.csv")) == read_bytes(dir.file("l2.csv")));
    const auto m = read_csv_matrix(dir.file("d1.csv"));
    CHECK(m.rows() == 31);
    CHECK(m.cols() == 4);
    CHECK(read_labels_csv(dir.file("l1.csv")).size() == 31);

    // Odd dimension is invalid for the skewed-t family.
    CHECK(run("simulate --family skewt --n 30 --p 3 --kclusters 3 --seed 1 "
              "--data-out " + dir.file("x.csv") + " --labels-out " +
              dir.file("y.csv")) != 0);
}

TEST_CASE("benchmark subcommand") {
    TempDir dir;
    const std::string flags =
        " --family gaussian --n 60 --p 3 --kclusters 3 --reps 4 --seed 2 ";
    CHECK(run("benchmark" + flags + "--report " + dir.file("r1.csv")) == 0);
    CHECK(run("benchmark" + flags + "--report " + dir.file("r2.csv")) == 0);
    CHECK(read_bytes(dir.file("r1.csv")) == read_bytes(dir.file("r2.csv")));

    SUBCASE("parallel repetitions match the sequential report") {
        CHECK(run("benchmark" + flags + "--jobs 4 --report " + dir.file("rp.csv")) == 0);
        CHECK(read_bytes(dir.file("rp.csv")) == read_bytes(dir.file("r1.csv")));
    }
    SUBCASE("report layout") {
        const auto text = read_bytes(dir.file("r1.csv"));
        CHECK(text.find("family,n,p,k,algorithm,mean_ari_x100,std_ari_x100,reps,seed\n") !=
              std::string::npos);
        CHECK(text.find("gaussian,60,3,3,kexpectile,") != std::string::npos);
        CHECK(text.find("gaussian,60,3,3,kmeans,") != std::string::npos);
    }
    SUBCASE("single repetition has zero std") {
        CHECK(run("benchmark --family gaussian --n 60 --p 3 --kclusters 3 "
                  "--reps 1 --seed 2 --algorithms kmeans --report " +
                  dir.file("r1rep.csv")) == 0);
        const auto text = read_bytes(dir.file("r1rep.csv"));
        CHECK(text.find(",0.0000,1,2\n") != std::string::npos);
    }
    CHECK(run("benchmark" + flags + "--algorithms dbscan --report " +
              dir.file("bad.csv")) != 0);
}

TEST_CASE("segment subcommand") {
    TempDir dir;
    RasterImage img(8, 8);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> px(0, 60);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const bool bright = i % 8 < 4;
        for (std::size_t ch = 0; ch < 3; ++ch)
            img.at(i, ch) = static_cast<std::uint8_t>(px(rng) + (bright ? 180 : 0));
    }
    write_ppm(dir.file("in.ppm"), img);

    SUBCASE("k=1 yields a uniform image") {
        CHECK(run("segment --image " + dir.file("in.ppm") +
                  " --k 1 --mode kmeans --out " + dir.file("one.ppm"),
                  dir.file("m.txt")) == 0);
        const auto out = read_ppm(dir.file("one.ppm"));
        for (std::size_t i = 1; i < out.pixel_count(); ++i)
            for (std::size_t ch = 0; ch < 3; ++ch)
                CHECK(out.at(i, ch) == out.at(0, ch));
    }
    SUBCASE("metrics and determinism") {
        for (int rep = 0; rep < 2; ++rep)
            CHECK(run("segment --image " + dir.file("in.ppm") +
                      " --k 2 --mode adaptive --seed 3 --metrics --out " +
                      dir.file("s" + std::to_string(rep) + ".ppm"),
                      dir.file("m" + std::to_string(rep) + ".txt")) == 0);
        CHECK(read_bytes(dir.file("s0.ppm")) == read_bytes(dir.file("s1.ppm")));
        CHECK(read_bytes(dir.file("m0.txt")) == read_bytes(dir.file("m1.txt")));
        const auto text = read_bytes(dir.file("m0.txt"));
        CHECK(text.find("mse_rgb ") != std::string::npos);
        CHECK(text.find("psnr_rgb ") != std::string::npos);
        CHECK(text.find("mse_gray ") != std::string::npos);
    }
    SUBCASE("only-cluster blacks out the rest") {
        CHECK(run("segment --image " + dir.file("in.ppm") +
                  " --k 2 --mode kmeans --seed 3 --only-cluster 0 --out " +
                  dir.file("only.ppm")) == 0);
        const auto out = read_ppm(dir.file("only.ppm"));
        std::size_t black = 0;
        for (std::size_t i = 0; i < out.pixel_count(); ++i)
            if (out.at(i, 0) == 0 && out.at(i, 1) == 0 && out.at(i, 2) == 0) ++black;
        CHECK(black == 32);
        CHECK(run("segment --image " + dir.file("in.ppm") +
                  " --k 2 --mode kmeans --only-cluster 5 --out " +
                  dir.file("bad.ppm")) != 0);
    }
    CHECK(run("segment --image " + dir.file("absent.ppm") +
              " --k 2 --mode kmeans --out " + dir.file("o.ppm")) != 0);
}

TEST_CASE("eval subcommand") {
    TempDir dir;
    write_text(dir.file("a.csv"), "0\n0\n1\n1\n");
    write_text(dir.file("b.csv"), "0\n1\n0\n1\n");
    write_text(dir.file("short.csv"), "0\n1\n");

    CHECK(run("eval --pred " + dir.file("a.csv") + " --truth " + dir.file("a.csv"),
              dir.file("o1.txt")) == 0);
    CHECK(read_bytes(dir.file("o1.txt")) == "1.000000\n");

    CHECK(run("eval --pred " + dir.file("a.csv") + " --truth " + dir.file("b.csv"),
              dir.file("o2.txt")) == 0);
    CHECK(read_bytes(dir.file("o2.txt")) == "-0.500000\n");

    CHECK(run("eval --pred " + dir.file("a.csv") + " --truth " +
              dir.file("short.csv")) != 0);
    CHECK(run("eval --pred " + dir.file("a.csv") + " --truth " + dir.file("a.csv") +
              " --metric purity") != 0);
}
