#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <cli.hpp>
#include <genfinder/branch.hpp>
#include <genfinder/snapshot_io.hpp>

using namespace genfinder;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "genfinder");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return Run{code, out.str(), err.str()};
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "genfinder_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& contents) {
    const fs::path p = temp_dir() / name;
    std::ofstream(p) << contents;
    return p;
}

fs::path write_snapshot(const std::string& name, const TransferMatrix& t) {
    return write_file(name, transfer_to_json(t).dump());
}

TransferMatrix identity_channel(int d) {
    return make_transfer(d, CMat::Identity(d * d, d * d));
}

TransferMatrix negative_pair_lift() {
    RMat t(2, 2);
    t << 0.1, 0.9, 0.9, 0.1;
    CMat e = CMat::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) e(i * 2 + i, j * 2 + j) = t(i, j);
    e(1, 1) = cxd(0.05, 0.05);
    e(2, 2) = cxd(0.05, -0.05);
    return make_transfer(2, std::move(e));
}

}  // namespace

TEST_CASE("usage errors exit with 64") {
    CHECK(run_cli({}).code == cli::kExitUsage);
    CHECK(run_cli({"bogus-subcommand"}).code == cli::kExitUsage);
    CHECK(run_cli({"check-markov"}).code == cli::kExitUsage);
}

TEST_CASE("missing input file exits with 66") {
    CHECK(run_cli({"check-markov", "/definitely/not/here.json"}).code == cli::kExitNoInput);
    CHECK(run_cli({"verify-reduction", "/definitely/not/here.sat"}).code == cli::kExitNoInput);
}

TEST_CASE("check-markov on the identity channel") {
    const fs::path p = write_snapshot("identity.json", identity_channel(2));
    const Run r = run_cli({"check-markov", p.string(), "--json"});
    CHECK(r.code == cli::kExitYes);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["version"] == "report-v1");
    CHECK(j["verdict"] == "markovian");
    CHECK(j["exit_code"] == 0);
}

TEST_CASE("check-markov on an exported sampled channel") {
    const TransferMatrix e = make_transfer(2, mat_exp(sample_lindblad(2, 7)));
    const fs::path p = write_snapshot("sampled.json", e);
    CHECK(run_cli({"check-markov", p.string()}).code == cli::kExitYes);
}

TEST_CASE("check-markov on the negative-pair lift exits 1 with a cause") {
    const fs::path p = write_snapshot("lift.json", negative_pair_lift());
    const Run r = run_cli({"check-markov", p.string(), "--json"});
    CHECK(r.code == cli::kExitNo);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "non-markovian");
    CHECK(j["cause"] == "log-undefined");
}

TEST_CASE("check-markov accepts the paper index pairing via --convention") {
    const TransferMatrix e = make_transfer(2, mat_exp(sample_lindblad(2, 12)));
    const int d = 2;
    CMat as_paper(4, 4);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    as_paper(i * d + j, b * d + a) = e.matrix(a * d + b, i * d + j);
    const fs::path p = write_snapshot("paper.json", make_transfer(2, as_paper));
    CHECK(run_cli({"check-markov", p.string(), "--convention", "paper"}).code == cli::kExitYes);
    // without the flag the reshuffled matrix is not even trace preserving
    CHECK(run_cli({"check-markov", p.string()}).code == cli::kExitData);
}

TEST_CASE("check-embed exit codes follow the 2x2 criterion") {
    const fs::path yes = write_file("embed_yes.json",
                                    R"({"kind":"classical","dim":2,"matrix":[[0.9,0.2],[0.1,0.8]]})");
    const Run ryes = run_cli({"check-embed", yes.string()});
    CHECK(ryes.code == cli::kExitYes);
    CHECK(ryes.out.find("embeddable") != std::string::npos);

    const fs::path no = write_file("embed_no.json",
                                   R"({"kind":"classical","dim":2,"matrix":[[0.1,0.9],[0.9,0.1]]})");
    CHECK(run_cli({"check-embed", no.string()}).code == cli::kExitNo);

    const fs::path bad = write_file("embed_bad.json",
                                    R"({"kind":"classical","dim":2,"matrix":[[0.9,0.2],[0.2,0.8]]})");
    CHECK(run_cli({"check-embed", bad.string()}).code >= 64);
}

TEST_CASE("extract writes a generator file with a small reassembly residual") {
    const TransferMatrix e = make_transfer(2, mat_exp(sample_lindblad(2, 7)));
    const fs::path p = write_snapshot("extract_me.json", e);
    const fs::path outp = temp_dir() / "generator.json";
    fs::remove(outp);
    const Run r = run_cli({"extract", p.string(), "--out", outp.string()});
    CHECK(r.code == cli::kExitYes);
    REQUIRE(fs::exists(outp));
    const auto j = load_json_file(outp);
    CHECK(j["kind"] == "generator");
    CHECK(j["reassembly_residual"].get<double>() <= 1e-8);
    // the stored witness reproduces the snapshot
    const CMat witness = complex_matrix_from_json(j.at("matrix"));
    CHECK((mat_exp(witness) - e.matrix).norm() <= 1e-7);
}

TEST_CASE("extract on the identity writes the zero generator") {
    const fs::path p = write_snapshot("extract_id.json", identity_channel(2));
    const fs::path outp = temp_dir() / "id_generator.json";
    fs::remove(outp);
    CHECK(run_cli({"extract", p.string(), "--out", outp.string()}).code == cli::kExitYes);
    const CMat witness = complex_matrix_from_json(load_json_file(outp).at("matrix"));
    CHECK(witness.norm() == 0.0);
}

TEST_CASE("extract on a non-markovian snapshot writes nothing and exits 1") {
    const fs::path p = write_snapshot("extract_no.json", negative_pair_lift());
    const fs::path outp = temp_dir() / "no_generator.json";
    fs::remove(outp);
    CHECK(run_cli({"extract", p.string(), "--out", outp.string()}).code == cli::kExitNo);
    CHECK_FALSE(fs::exists(outp));
}

TEST_CASE("fit recovers a generator from a series file") {
    const CMat l = sample_lindblad(2, 55);
    std::vector<SeriesEntry> entries;
    for (const double t : {0.5, 1.0, 2.0})
        entries.push_back(SeriesEntry{t, make_transfer(2, mat_exp(t * l))});
    const fs::path p = write_file("series.json", series_to_json(make_series(entries)).dump());
    const fs::path outp = temp_dir() / "fit_generator.json";
    fs::remove(outp);
    const Run r = run_cli({"fit", p.string(), "--out", outp.string(), "--tol", "1e-6", "--json"});
    CHECK(r.code == cli::kExitYes);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["snapshot_residuals"].size() == 3);
    const CMat witness = complex_matrix_from_json(load_json_file(outp).at("matrix"));
    CHECK((witness - l).norm() <= 1e-6);
}

TEST_CASE("fit rejects a mixed-generator series") {
    std::vector<SeriesEntry> entries;
    entries.push_back(SeriesEntry{1.0, make_transfer(2, mat_exp(sample_lindblad(2, 61)))});
    entries.push_back(SeriesEntry{2.0, make_transfer(2, mat_exp(2.0 * sample_lindblad(2, 62)))});
    const fs::path p = write_file("mixed.json", series_to_json(make_series(entries)).dump());
    CHECK(run_cli({"fit", p.string(), "--tol", "1e-6"}).code != cli::kExitYes);
}

TEST_CASE("reduce writes a bundle directory") {
    const fs::path satp = write_file("one.sat", "p 1in3 3 1\n1 2 3 0\n");
    const fs::path dir = temp_dir() / "bundle_out";
    fs::remove_all(dir);
    const Run r = run_cli({"reduce", satp.string(), "--out", dir.string()});
    CHECK(r.code == cli::kExitYes);
    const auto manifest = load_json_file(dir / "manifest.json");
    CHECK(manifest["sigma_value"].get<double>() > 0.0);
    CHECK(manifest["d"].get<int>() == 4 * (1 + 2 * 3 + 1));
    CHECK(manifest["expected_markovian"].get<bool>());
    // snapshot round-trips through the channel parser
    const TransferMatrix e = transfer_from_json(load_json_file(dir / "E.json"));
    CHECK(e.hilbert_dim == manifest["d"].get<int>());
    fs::remove_all(dir);
}

TEST_CASE("reduce flags the canonical unsat instance") {
    const fs::path satp =
        write_file("unsat.sat", "p 1in3 5 4\n1 2 3 0\n1 2 4 0\n3 4 5 0\n1 2 5 0\n");
    const fs::path dir = temp_dir() / "bundle_unsat";
    fs::remove_all(dir);
    CHECK(run_cli({"reduce", satp.string(), "--out", dir.string()}).code == cli::kExitYes);
    CHECK_FALSE(load_json_file(dir / "manifest.json")["expected_markovian"].get<bool>());
    fs::remove_all(dir);
}

TEST_CASE("reduce on a malformed file exits >= 64") {
    const fs::path satp = write_file("bad.sat", "p 1in3 3 1\n1 1 2 0\n");
    const fs::path dir = temp_dir() / "bundle_bad";
    CHECK(run_cli({"reduce", satp.string(), "--out", dir.string()}).code >= 64);
}

TEST_CASE("verify-reduction exits 0 on agreeing instances") {
    const fs::path satp = write_file("verify_one.sat", "p 1in3 3 1\n1 2 3 0\n");
    const Run r = run_cli({"verify-reduction", satp.string(), "--json"});
    CHECK(r.code == cli::kExitYes);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["all_agree"].get<bool>());
    CHECK(j["instances"][0]["quantum_verdict"] == "markovian");
}

TEST_CASE("verify-reduction respects the caps with exit 65") {
    std::string text = "p 1in3 13 1\n1 2 3 0\n";
    const fs::path satp = write_file("toolarge.sat", text);
    CHECK(run_cli({"verify-reduction", satp.string()}).code == cli::kExitData);
}

TEST_CASE("cli runs are deterministic") {
    const TransferMatrix e = make_transfer(2, mat_exp(sample_lindblad(2, 99)));
    const fs::path p = write_snapshot("det.json", e);
    const Run a = run_cli({"check-markov", p.string(), "--json"});
    const Run b = run_cli({"check-markov", p.string(), "--json"});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
}

TEST_CASE("help is reachable") {
    CHECK(run_cli({"--help"}).code == cli::kExitYes);
}
