#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gammax/scan.hpp"
#include "gammax/verify.hpp"

using namespace gammax;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() / ("gammax_test_" + std::to_string(::getpid()) + "_" +
                                           std::to_string(counter++));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
    static inline int counter = 0;
};

} // namespace

TEST_CASE("scan record at p=3") {
    const auto rec = make_scan_record(3, 1);
    CHECK(rec.p == 3);
    CHECK(rec.kappa == 2);
    CHECK(rec.eta == 2);
    CHECK(rec.gamma_max == doctest::Approx(1.8793852415718167681).epsilon(1e-12));
    CHECK(rec.kappa2_over_eta == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(rec.eta_over_gamma_max == doctest::Approx(1.06417777248).epsilon(1e-11));
    CHECK(rec.kappa_over_sqrt_p == doctest::Approx(1.15470053838).epsilon(1e-11));
    CHECK(rec.stmt1_margin == doctest::Approx(0.688238573844).epsilon(1e-11));
}

TEST_CASE("CSV schema and formatting") {
    CHECK(csv_header() ==
          "p,kappa,eta,gamma_max,kappa2_over_eta,eta_over_gamma_max,kappa_over_sqrt_p,stmt1_margin");
    const auto rec = make_scan_record(3, 1);
    CHECK(csv_row(rec) == "3,2,2,1.87938524157,2,1.06417777248,1.15470053838,0.688238573844");
    CHECK(format_real(2.0) == "2");
    CHECK(format_real(1.8793852415718167681) == "1.87938524157");
}

TEST_CASE("scan of a single prime emits exactly one record") {
    TempDir tmp;
    ScanConfig config;
    config.p_min = 3;
    config.p_max = 3;
    config.out_path = tmp.file("single.csv");
    const auto result = scan(config);
    CHECK(result.completed);
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].p == 3);
    CHECK(slurp(config.out_path) ==
          csv_header() + "\n3,2,2,1.87938524157,2,1.06417777248,1.15470053838,0.688238573844\n");
}

TEST_CASE("scan rejects bad ranges and missing output") {
    ScanConfig config;
    config.p_min = 2;
    config.p_max = 10;
    config.out_path = "/tmp/never.csv";
    CHECK_THROWS_AS(scan(config), InvalidInput);
    config.p_min = 11;
    config.p_max = 5;
    CHECK_THROWS_AS(scan(config), InvalidInput);
    config.p_min = 3;
    config.p_max = 5;
    config.out_path = "";
    CHECK_THROWS_AS(scan(config), InvalidInput);
}

TEST_CASE("parallel scan bytes equal serial scan bytes") {
    TempDir tmp;
    ScanConfig serial;
    serial.p_min = 3;
    serial.p_max = 300;
    serial.out_path = tmp.file("serial.csv");
    serial.workers = 1;
    const auto rs = scan(serial);

    ScanConfig parallel = serial;
    parallel.out_path = tmp.file("parallel.csv");
    parallel.workers = 4;
    const auto rp = scan(parallel);

    CHECK(slurp(serial.out_path) == slurp(parallel.out_path));
    CHECK(rs.records.size() == rp.records.size());
    CHECK(rs.summary.count == rp.summary.count);
    CHECK(rs.summary.max_kappa2_over_eta == rp.summary.max_kappa2_over_eta);
    CHECK(rs.summary.min_stmt1_margin == rp.summary.min_stmt1_margin);
}

TEST_CASE("summary matches fit_constants over the emitted CSV") {
    TempDir tmp;
    ScanConfig config;
    config.p_min = 3;
    config.p_max = 500;
    config.out_path = tmp.file("range.csv");
    config.workers = 2;
    const auto result = scan(config);

    const auto records = read_csv(config.out_path);
    REQUIRE(records.size() == result.records.size());
    const auto from_csv = fit_constants(records);
    const auto from_scan = result.summary.fit();
    CHECK(from_csv.c1_hat == from_scan.c1_hat);
    CHECK(from_csv.c2_hat == from_scan.c2_hat);
    CHECK(from_csv.s_hat == from_scan.s_hat);
}

TEST_CASE("fitted constants keep the chain strict row-wise") {
    TempDir tmp;
    ScanConfig config;
    config.p_min = 3;
    config.p_max = 1000;
    config.out_path = tmp.file("chain.csv");
    config.workers = 2;
    const auto result = scan(config);
    const auto fit = result.summary.fit();

    CHECK(std::isfinite(fit.c1_hat));
    CHECK(std::isfinite(fit.c2_hat));
    CHECK(fit.c1_hat > 0);
    CHECK(fit.c2_hat > 0);
    for (const auto& rec : result.records) {
        // same association as the accumulator: ratio first, then scale
        CHECK(rec.kappa2_over_eta < fit.c1_hat);
        CHECK(fit.c1_hat * rec.eta_over_gamma_max < fit.c2_hat);
        CHECK(rec.eta >= 1);
        CHECK(rec.gamma_max > 0);
        CHECK(std::isfinite(rec.stmt1_margin));
        CHECK(rec.stmt1_margin > 0);
    }
}

TEST_CASE("fit_constants boundary behavior") {
    CHECK_THROWS_AS(fit_constants({}), EmptyInput);

    const ScanRecord single = make_scan_record(3, 1);
    const auto fit = fit_constants(std::span(&single, 1));
    CHECK(fit.c1_hat == std::nextafter(2.0, 1e300)); // max kappa^2/eta plus one ulp
    CHECK(fit.s_hat == 1); // no row past the empirical p0: vacuous
}

TEST_CASE("read_csv validates header and shape") {
    TempDir tmp;
    CHECK_THROWS_AS(read_csv(tmp.file("absent.csv")), InvalidInput);

    const auto bad = tmp.file("bad.csv");
    std::ofstream(bad) << "nope\n";
    CHECK_THROWS_AS(read_csv(bad), InvalidInput);

    const auto good = tmp.file("good.csv");
    std::ofstream(good) << csv_header() << "\n"
                        << csv_row(make_scan_record(5, 1)) << "\n";
    const auto records = read_csv(good);
    REQUIRE(records.size() == 1);
    CHECK(records[0].p == 5);
    CHECK(records[0].eta == 2);
}

TEST_CASE("interrupted scan resumes to identical bytes") {
    TempDir tmp;

    ScanConfig full;
    full.p_min = 3;
    full.p_max = 400;
    full.out_path = tmp.file("uninterrupted.csv");
    full.workers = 2;
    scan(full);
    const std::string expected = slurp(full.out_path);

    ScanConfig part = full;
    part.out_path = tmp.file("resumed.csv");
    part.checkpoint_path = tmp.file("resume.ckpt");
    int emitted = 0;
    const auto stopped = scan(part, [&](const ScanRecord&) { return ++emitted < 37; });
    CHECK_FALSE(stopped.completed);
    CHECK(emitted == 37); // mid-batch: the CSV is ahead of the checkpoint

    const auto resumed = scan(part);
    CHECK(resumed.completed);
    CHECK(slurp(part.out_path) == expected);
    CHECK(resumed.records.size() == primes_in_range(3, 400).size());

    // a second resume finds everything done and only rewrites the rows
    const auto again = scan(part);
    CHECK(again.completed);
    CHECK(slurp(part.out_path) == expected);
}

TEST_CASE("checkpoint conflicts are refused until --restart") {
    TempDir tmp;
    ScanConfig config;
    config.p_min = 3;
    config.p_max = 100;
    config.out_path = tmp.file("scan.csv");
    config.checkpoint_path = tmp.file("scan.ckpt");
    int emitted = 0;
    scan(config, [&](const ScanRecord&) { return ++emitted < 10; });

    // different config hash
    ScanConfig other = config;
    other.s = 2;
    CHECK_THROWS_AS(scan(other), CheckpointCorrupt);

    // unreadable checkpoint
    std::ofstream(config.checkpoint_path, std::ios::trunc) << "{not json";
    CHECK_THROWS_AS(scan(config), CheckpointCorrupt);

    // --restart clears the slate
    config.restart = true;
    const auto result = scan(config);
    CHECK(result.completed);
    CHECK(result.records.size() == primes_in_range(3, 100).size());
}

TEST_CASE("checkpoint with missing CSV is a conflict") {
    TempDir tmp;
    ScanConfig config;
    config.p_min = 3;
    config.p_max = 100;
    config.out_path = tmp.file("gone.csv");
    config.checkpoint_path = tmp.file("gone.ckpt");
    int emitted = 0;
    scan(config, [&](const ScanRecord&) { return ++emitted < 5; });
    fs::remove(config.out_path);
    CHECK_THROWS_AS(scan(config), CheckpointCorrupt);
}

TEST_CASE("verify_lemmas reports per-prime rows") {
    const std::vector<u64> primes{3, 5, 7};
    const auto checks = verify_lemmas(primes);
    REQUIRE(checks.size() == 3);
    for (const auto& c : checks) {
        CHECK(c.pass);
        CHECK(c.error.empty());
        CHECK(c.max_deviation < 1e-9);
    }
    CHECK(all_pass(checks));

    const std::vector<u64> guarded{3, 103};
    const auto mixed = verify_lemmas(guarded);
    CHECK(mixed[0].pass);
    CHECK(mixed[1].error == "TooLarge");
    CHECK_FALSE(all_pass(mixed));
}
