#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pointlab/cli/commands.hpp"
#include "pointlab/cli/format.hpp"

using namespace pointlab;
using namespace pointlab::cli;
namespace fs = std::filesystem;

namespace {

const std::string kConfigDir = POINTLAB_CONFIG_DIR;
const std::string kExe = POINTLAB_EXE;

struct Run {
    int exit_code;
    std::string out;
};

// Runs the executable with stderr discarded and returns stdout and the exit status.
Run run_exe(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " \"" + kExe + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path temp_file(const std::string& name, const std::string& content)
{
    const fs::path p = fs::temp_directory_path() / ("pointlab_cli_test_" + std::to_string(::getpid()) + "_" + name);
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream s(text);
    std::string l;
    while (std::getline(s, l)) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::stringstream s(line);
    while (std::getline(s, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

json cfg(const std::string& file) { return load_config_file(kConfigDir + "/" + file); }

}  // namespace

TEST_CASE("number formatting")
{
    CHECK(format_number(1.0) == "1.0000000000000000e+00");
    CHECK(format_number(-0.0) == "0.0000000000000000e+00");
    CHECK(format_number(0.1) == "1.0000000000000001e-01");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_number(std::nan("")) == "nan");
    // 17 significant digits round-trip
    for (double v : {kPi, 1e-300, 6.02214076e23, -2.5e-7}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("csv tables")
{
    CsvTable t({"a", "b"});
    t.add_row({"1", "2"});
    t.add_row({"3", ""});
    CHECK(t.rows() == 2);
    CHECK(t.str() == "a,b\n1,2\n3,\n");
    CHECK_THROWS_AS(t.add_row({"1"}), std::logic_error);
}

TEST_CASE("config parsing")
{
    CHECK(parse_parameter(json::parse(R"({"mu": -1.5})")).mu() == -1.5);
    CHECK(parse_parameter(json::parse(R"({"mu": "infinity"})")).is_friedrichs());
    CHECK(parse_parameter(json::parse(R"({"theta": 1.5707963267948966})")).mu() == 0.0);
    CHECK_THROWS_AS(parse_parameter(json::parse(R"({"mu": 1, "theta": 0})")), ConfigError);
    CHECK_THROWS_AS(parse_parameter(json::parse(R"({})")), ConfigError);
    CHECK_THROWS_AS(parse_parameter(json::parse(R"({"mu": "big"})")), ConfigError);
    CHECK(parse_complex(json::parse("[1, 2]"), "l") == Complex(1, 2));
    CHECK(parse_complex(json::parse("3"), "l") == Complex(3, 0));
    CHECK_THROWS_AS(parse_complex(json::parse(R"("x")"), "l"), ConfigError);
    CHECK_THROWS_AS(parse_point(json::parse("[1, 2]"), "p"), ConfigError);

    const auto grid = parse_grid(json::parse(R"({"axes": {"x1": [0, 1, 2], "x2": [0, 2, 3], "x3": 5}})"));
    REQUIRE(grid.size() == 6);
    CHECK(grid[0] == Point3{0, 0, 5});
    CHECK(grid[1] == Point3{1, 0, 5});
    CHECK(grid[2] == Point3{0, 1, 5});
    CHECK(parse_grid(json::parse(R"({"points": [[1, 2, 3]]})")).size() == 1);
    CHECK_THROWS_AS(parse_grid(json::parse(R"({"points": []})")), ConfigError);

    const auto samples = parse_samples(json::parse(R"({"lo": 5, "hi": 10, "count": 11})"), "t");
    REQUIRE(samples.size() == 11);
    CHECK(samples.front() == 5.0);
    CHECK(samples.back() == 10.0);

    CHECK(parse_quadrature(json::parse(R"({"quadrature": {"preset": "fast"}})"), std::nullopt) == QuadratureSpec::fast());
    CHECK(parse_quadrature(json::parse(R"({"quadrature": {"preset": "fast"}})"), "strict") == QuadratureSpec::strict());
    CHECK(parse_quadrature(json::parse(R"({"quadrature": {"radial_order": 10}})"), std::nullopt).radial_order == 10);
    CHECK_THROWS_AS(parse_quadrature(json::parse(R"({"quadrature": {"preset": "nope"}})"), std::nullopt), ConfigError);

    CHECK(parse_format(json::parse(R"({"format": "json"})"), "csv") == "json");
    CHECK(parse_format(json::parse(R"({})"), "csv") == "csv");
    CHECK_THROWS_AS(parse_format(json::parse(R"({"format": "xml"})"), "csv"), ConfigError);

    const auto ball = parse_data_field(json::parse(R"({"kind": "ball", "center": [1, 0, 0], "width": 0.5})"), "f");
    CHECK(ball.value(Point3{1, 0, 0}) == 1.0);
    CHECK(parse_data_field(json(nullptr), "f").empty());
    CHECK_THROWS_AS(parse_data_field(json::parse(R"({"kind": "cube"})"), "f"), ConfigError);
}

TEST_CASE("parametrize command")
{
    const CommandResult r = cmd_parametrize(cfg("parametrize.json"), std::nullopt);
    CHECK(r.exit_code == kExitOk);
    const auto ls = lines(r.output);
    REQUIRE(ls.size() == 1 + 8 + 1);
    CHECK(ls[0] == "theta,mu,mu_complex_re,mu_complex_im,theta_roundtrip");
    double prev = -1e300;
    for (int i = 1; i <= 8; ++i) {
        const double mu = std::stod(split(ls[i])[1]);
        CHECK(mu > prev);
        prev = mu;
    }
    CHECK(split(ls[9])[1] == "0.0000000000000000e+00");
    CHECK(r.output.find('\r') == std::string::npos);
    CHECK(r.output.back() == '\n');
}

TEST_CASE("resolvent command")
{
    json c = cfg("resolvent.json");
    const CommandResult a = cmd_resolvent(c, std::nullopt);
    const auto ls = lines(a.output);
    REQUIRE(ls.size() == 26);
    CHECK(ls[0] == "x1,x2,x3,re_free,im_free,re_extra,im_extra,flag");
    // mu = 1, lambda = i: |extra| = e^{-(|x|+|y|)} / (8 pi |x||y|)
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto cells = split(ls[i]);
        REQUIRE(cells.size() == 8);
        const Point3 x{std::stod(cells[0]), std::stod(cells[1]), std::stod(cells[2])};
        if (x.is_origin()) {
            CHECK(cells[7] == "singular_origin");
            CHECK(cells[5].empty());
            continue;
        }
        const double s = x.norm() + 0.5;
        const double expected = std::exp(-s) / (8.0 * kPi * x.norm() * 0.5);
        CHECK(std::hypot(std::stod(cells[5]), std::stod(cells[6])) == doctest::Approx(expected).epsilon(1e-13));
    }

    c["mu"] = "infinity";
    for (const auto& l : lines(cmd_resolvent(c, std::nullopt).output)) {
        if (l[0] == 'x') continue;
        const auto cells = split(l);
        CHECK(cells[5] == "0.0000000000000000e+00");
        CHECK(cells[6] == "0.0000000000000000e+00");
    }

    c = cfg("resolvent.json");
    c["grid"] = json::parse(R"({"points": [[0.5, 0, 0], [1, 1, 1]]})");
    const CommandResult d = cmd_resolvent(c, std::nullopt);
    CHECK(d.exit_code == kExitOk);
    const auto dl = lines(d.output);
    CHECK(split(dl[1])[7] == "singular_diagonal");
    CHECK(split(dl[1])[3].empty());
    CHECK(split(dl[2])[7].empty());
    REQUIRE_FALSE(d.diagnostics.empty());
    CHECK(d.diagnostics[0].find("1 flagged") != std::string::npos);

    c = cfg("resolvent.json");
    c["lambda"] = json::parse("[0, -1]");
    const CommandResult p = cmd_resolvent(c, std::nullopt);
    CHECK(p.exit_code == kExitOk);
    CHECK(split(lines(p.output)[1])[7].find("pole") != std::string::npos);

    c = cfg("resolvent.json");
    c.erase("lambda");
    CHECK_THROWS_AS(cmd_resolvent(c, std::nullopt), ConfigError);
}

TEST_CASE("spectrum command")
{
    const CommandResult r = cmd_spectrum(cfg("spectrum.json"), std::nullopt);
    const json doc = json::parse(r.output);
    REQUIRE(doc.contains("spectra"));
    REQUIRE(doc["spectra"].size() == 6);
    CHECK(doc["spectra"][0]["eigenvalue"] == "-4.0000000000000000e+00");
    CHECK(doc["spectra"][0]["pole_kind"] == "eigenvalue");
    CHECK(doc["spectra"][4]["pole_kind"] == "resonance");
    CHECK(doc["spectra"][5]["pole_kind"] == "none");
    for (const auto& row : doc["spectra"])
        for (const auto& [k, v] : row.items()) CHECK(v.is_string());
}

TEST_CASE("wave command")
{
    const CommandResult r = cmd_wave(cfg("wave.json"), std::nullopt);
    CHECK(r.exit_code == kExitOk);
    CHECK(lines(r.output).size() == 1 + 3 * 25);
    REQUIRE(r.summary);
    const json s = json::parse(*r.summary);
    CHECK(std::stod(s["max_abs_u_outside_cones"].get<std::string>()) <= 1e-8);
    CHECK(std::stod(s["fitted_rate"].get<std::string>()) == doctest::Approx(-1.0).epsilon(0.01));

    const CommandResult g = cmd_wave(cfg("wave_growth.json"), std::nullopt);
    const json gs = json::parse(*g.summary);
    CHECK(std::stod(gs["fitted_rate"].get<std::string>()) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::stod(gs["max_abs_u_outside_cones"].get<std::string>()) <= 1e-8);
}

TEST_CASE("closure command")
{
    const CommandResult r = cmd_closure(cfg("closure.json"), std::nullopt);
    bool saw_d4 = false;
    std::vector<double> naive4, tailored4;
    for (const auto& l : lines(r.output)) {
        const auto c = split(l);
        if (c[0] == "D4") {
            saw_d4 = true;
            CHECK(std::stod(c[2]) == doctest::Approx(std::stod(c[1]) / 2).epsilon(1e-10));
        }
        if (c[0] == "naive_d4") naive4.push_back(std::stod(c[2]));
        if (c[0] == "tailored_d4") tailored4.push_back(std::stod(c[2]));
    }
    CHECK(saw_d4);
    REQUIRE(naive4.size() == 3);
    CHECK(naive4[1] == doctest::Approx(naive4[0]).epsilon(1e-8));
    CHECK(naive4[2] == doctest::Approx(naive4[0]).epsilon(1e-8));
    REQUIRE(tailored4.size() == 3);
    CHECK(tailored4[0] > tailored4[1]);
    CHECK(tailored4[1] > tailored4[2]);
}

TEST_CASE("verify command")
{
    const CommandResult r = cmd_verify(cfg("default.json"), std::nullopt);
    CHECK(r.exit_code == kExitOk);
    const json doc = json::parse(r.output);
    CHECK(doc["all_pass"] == true);
    CHECK(doc["failed"] == "0");
    for (const auto& c : doc["checks"]) {
        CHECK(c["value"].is_string());
        CHECK(c["pass"] == true);
    }

    const CommandResult tight = cmd_verify(cfg("verify_tight.json"), std::nullopt);
    CHECK(tight.exit_code == kExitVerificationFailure);
    CHECK(json::parse(tight.output)["all_pass"] == false);

    json bad = cfg("default.json");
    bad["suites"] = json::parse(R"(["fourier", "nonsense"])");
    CHECK_THROWS_AS(cmd_verify(bad, std::nullopt), ConfigError);

    json one = cfg("default.json");
    one["suites"] = json::parse(R"(["residue"])");
    const json rd = json::parse(cmd_verify(one, std::nullopt).output);
    for (const auto& c : rd["checks"]) CHECK(c["suite"] == "residue");
}

TEST_CASE("in-process determinism")
{
    for (const char* name : {"parametrize", "resolvent", "spectrum", "closure"}) {
        const std::string file = std::string(name) + ".json";
        CHECK(run_command(name, cfg(file), std::nullopt).output == run_command(name, cfg(file), std::nullopt).output);
    }
    CHECK_THROWS_AS(run_command("bogus", json::object(), std::nullopt), ConfigError);
}

TEST_CASE("executable: exit codes and byte-identical output")
{
    const Run a = run_exe("verify --config \"" + kConfigDir + "/default.json\"");
    const Run b = run_exe("verify --config \"" + kConfigDir + "/default.json\"");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());

    CHECK(run_exe("verify --config \"" + kConfigDir + "/verify_tight.json\"").exit_code == 1);
    CHECK(run_exe("verify").exit_code == 2);
    CHECK(run_exe("frobnicate --config x.json").exit_code == 2);
    CHECK(run_exe("verify --config /nonexistent/config.json").exit_code == 2);
    CHECK(run_exe("closure --config \"" + kConfigDir + "/closure.json\" --quadrature-preset turbo").exit_code == 2);

    const fs::path malformed = temp_file("bad.json", "{\"suites\": [");
    CHECK(run_exe("verify --config \"" + malformed.string() + "\"").exit_code == 2);
    const fs::path unknown = temp_file("unknown.json", R"({"suites": ["nonsense"]})");
    CHECK(run_exe("verify --config \"" + unknown.string() + "\"").exit_code == 2);

    const fs::path out = fs::temp_directory_path() / ("pointlab_cli_test_" + std::to_string(::getpid()) + "_wave.csv");
    const Run w = run_exe("wave --config \"" + kConfigDir + "/wave.json\" --out \"" + out.string() + "\"");
    CHECK(w.exit_code == 0);
    CHECK(w.out.empty());
    const std::string first = read_file(out);
    const std::string summary = read_file(out.string() + ".summary.json");
    CHECK(first.substr(0, 2) == "t,");
    CHECK(summary.find("fitted_rate") != std::string::npos);
    CHECK(run_exe("wave --config \"" + kConfigDir + "/wave.json\" --out \"" + out.string() + "\"").exit_code == 0);
    CHECK(read_file(out) == first);

    const Run fast = run_exe("parametrize --config \"" + kConfigDir + "/parametrize.json\" --quadrature-preset fast");
    CHECK(fast.exit_code == 0);

    for (const fs::path& p : {malformed, unknown, out, fs::path(out.string() + ".summary.json")}) fs::remove(p);
}

TEST_CASE("thread cap does not change the wave output")
{
    const std::string args = "wave --config \"" + kConfigDir + "/wave.json\"";
    const Run many = run_exe(args);
    CHECK(many.exit_code == 0);
    CHECK(run_exe(args, "POINTLAB_THREADS=1").out == many.out);
    CHECK(run_exe(args, "POINTLAB_THREADS=3").out == many.out);
}
