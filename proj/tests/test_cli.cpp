#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using Catch::Approx;

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "biphoton_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run_cli(const std::string& args) {
  static int serial = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(serial));
  const fs::path err = scratch_dir() / ("err" + std::to_string(serial));
  ++serial;
  const std::string cmd = std::string(BIPHOTON_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

const std::string kFixture = std::string(BIPHOTON_FIXTURE_DIR) + "/paper_setup.qopt";
const std::string kHeadline = std::string(BIPHOTON_FIXTURE_DIR) + "/headline_s254.qopt";

fs::path write_scratch(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

double last_csv_field(const std::string& line) {
  const size_t c = line.rfind(',');
  return std::stod(line.substr(c + 1));
}

}  // namespace

TEST_CASE("validate: exit codes and diagnostic format") {
  SECTION("canonical fixture is clean") {
    const auto r = run_cli("validate " + kFixture);
    CHECK(r.exit_code == 0);
    CHECK(r.err.empty());
    CHECK(r.out.empty());
  }
  SECTION("three photons fail with one error line") {
    const auto p = write_scratch(
        "three.qopt",
        "photon P1 mode=a pol=H wavelength_nm=702.2 bandwidth_nm=1.5 delay_fs=0\n"
        "photon P2 mode=b pol=V wavelength_nm=702.2 bandwidth_nm=1.5 delay_fs=0\n"
        "photon P3 mode=c pol=H wavelength_nm=702.2 bandwidth_nm=1.5 delay_fs=0\n"
        "detector D1 mode=a pol=H\ndetector D2 mode=b pol=V\ndetector D3 mode=c pol=H\n");
    const auto r = run_cli("validate " + p.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find(":error:exactly two photons") != std::string::npos);
  }
  SECTION("missing file") {
    const auto r = run_cli("validate /nonexistent/nope.qopt");
    CHECK(r.exit_code == 2);
  }
  SECTION("warnings alone keep exit code zero") {
    const auto p = write_scratch(
        "warn.qopt",
        "photon P1 mode=a pol=H wavelength_nm=702.2 bandwidth_nm=1.5 delay_fs=0\n"
        "photon P2 mode=b pol=V wavelength_nm=702.2 bandwidth_nm=1.5 delay_fs=0\n"
        "detector D1 mode=a pol=H\ndetector D2 mode=a pol=V\n");
    const auto r = run_cli("validate " + p.string());
    CHECK(r.exit_code == 0);
    CHECK(r.err.find(":warning:unterminated mode 'b'") != std::string::npos);
  }
}

TEST_CASE("run: exact table and sampled determinism") {
  SECTION("exact cross-site quarters with analyzers at zero") {
    auto p = write_scratch(
        "zero_analyzers.qopt",
        [] {
          std::string t = slurp(kFixture);
          size_t pos;
          while ((pos = t.find("angle_deg=22.5")) != std::string::npos)
            t.replace(pos, 14, "angle_deg=0");
          return t;
        }());
    const auto r = run_cli("run " + p.string());
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "outcome,p");
    double dha_dvb = -1;
    while (std::getline(lines, line))
      if (line.rfind("DHA+DVB,", 0) == 0) dha_dvb = last_csv_field(line);
    CHECK(dha_dvb == Approx(0.25).epsilon(1e-12));
  }
  SECTION("sampled runs are byte-identical for a fixed seed") {
    const auto a = run_cli("run " + kFixture + " --mode sampled --seed 1 --duration 1");
    const auto b = run_cli("run " + kFixture + " --mode sampled --seed 1 --duration 1");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("outcome,p,n", 0) == 0);
  }
  SECTION("sampled without a seed is a usage error") {
    const auto r = run_cli("run " + kFixture + " --mode sampled");
    CHECK(r.exit_code == 2);
  }
  SECTION("--out writes the same payload to a file") {
    const fs::path out = scratch_dir() / "table.csv";
    const auto r = run_cli("run " + kFixture + " --out " + out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(out).rfind("outcome,p", 0) == 0);
  }
}

TEST_CASE("scan: curve csv with a visibility trailer") {
  SECTION("dip scan on the ideal fixture reads visibility one") {
    const auto r =
        run_cli("scan " + kFixture + " --element PRISM2 --from -3000 --to 3000 --step 25 --kind hom");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("param,DHA-DVB_p") == 0);
    const size_t trailer = r.out.find("# visibility=");
    REQUIRE(trailer != std::string::npos);
    CHECK(std::stod(r.out.substr(trailer + 13)) == Approx(1.0).epsilon(1e-9));
  }
  SECTION("fringe scan resolves several periods") {
    const auto r = run_cli("scan " + kFixture +
                           " --element PRISM2 --from -5 --to 5 --step 0.1 --kind fringe");
    REQUIRE(r.exit_code == 0);
    // 10 fs span over a 2.34 fs period
    CHECK(r.out.find("# visibility=") != std::string::npos);
  }
  SECTION("zero step is a usage error") {
    const auto r =
        run_cli("scan " + kFixture + " --element PRISM2 --from 0 --to 10 --step 0 --kind hom");
    CHECK(r.exit_code == 2);
  }
  SECTION("unknown element is a domain error") {
    const auto r =
        run_cli("scan " + kFixture + " --element NOPE --from 0 --to 10 --step 1 --kind hom");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("NOPE") != std::string::npos);
  }
}

TEST_CASE("chsh: defaults reproduce the ideal bound, sampled adds the sigma row") {
  SECTION("exact with default angles") {
    const auto r = run_cli("chsh " + kFixture);
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "thetaA,thetaB,Npp,Nmm,Npm,Nmp,E,dE");
    for (int i = 0; i < 4; ++i) REQUIRE(std::getline(lines, line));
    REQUIRE(std::getline(lines, line));
    CHECK(line == "S,dS,sigma");
    REQUIRE(std::getline(lines, line));
    const double s = std::stod(line.substr(0, line.find(',')));
    CHECK(s == Approx(2.828427).margin(1e-6));
    CHECK(line.back() == ',');  // sigma column empty in exact mode
  }
  SECTION("sampled headline fixture violates by roughly 27 sigma") {
    const auto r = run_cli("chsh " + kHeadline +
                           " --mode sampled --seed 5 --rate 12000 --duration 0.986");
    REQUIRE(r.exit_code == 0);
    const size_t tail = r.out.rfind('\n', r.out.size() - 2);
    const std::string last = r.out.substr(tail + 1);
    const double sigma = last_csv_field(last);
    CHECK(sigma > 15.0);
    CHECK(sigma < 40.0);
  }
  SECTION("malformed angles are a usage error") {
    const auto r = run_cli("chsh " + kFixture + " --angles 1,2,3");
    CHECK(r.exit_code == 2);
  }
}
