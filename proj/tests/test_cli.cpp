// Black-box checks of the installed CLI: exit codes and printed contracts.
// The binary path arrives through the POLYPROF_CLI environment variable.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string cli() {
  const char* p = std::getenv("POLYPROF_CLI");
  REQUIRE_MESSAGE(p != nullptr, "POLYPROF_CLI must point at the binary");
  return p;
}

int run(const std::string& args, std::string* out = nullptr) {
  const std::string cmd = cli() + " " + args + " >cli_stdout.txt 2>&1";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream in("cli_stdout.txt");
    out->assign(std::istreambuf_iterator<char>(in),
                std::istreambuf_iterator<char>());
  }
  std::remove("cli_stdout.txt");
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("init and profile round-trip with the documented summary line") {
  CHECK(run("init --arch 3-7-1 --method xavier-uniform --bias 0.01 --seed 1 "
            "--out cli_net.json") == 0);

  std::string out;
  CHECK(run("profile --net cli_net.json --mode exhaustive --seed 0 "
            "--out cli_profile.json --hist cli_hist.csv --bin-width 5",
            &out) == 0);
  CHECK(out.find("regions=") != std::string::npos);
  CHECK(out.find("omega=") != std::string::npos);
  CHECK(out.find("simple_fraction=") != std::string::npos);
  CHECK(out.find("avg_faces=") != std::string::npos);

  CHECK(run("histogram --profile cli_profile.json --bin-width 5 "
            "--out cli_hist2.csv") == 0);

  std::ifstream h1("cli_hist.csv"), h2("cli_hist2.csv");
  const std::string a((std::istreambuf_iterator<char>(h1)),
                      std::istreambuf_iterator<char>());
  const std::string b((std::istreambuf_iterator<char>(h2)),
                      std::istreambuf_iterator<char>());
  CHECK(a == b);  // histogram is derivable from the profile alone

  std::remove("cli_net.json");
  std::remove("cli_profile.json");
  std::remove("cli_hist.csv");
  std::remove("cli_hist2.csv");
}

TEST_CASE("byte-identical outputs for identical flags and seed") {
  CHECK(run("init --arch 3-10-1 --method kaiming --seed 3 --out cli_net.json") ==
        0);
  CHECK(run("profile --net cli_net.json --samples 500 --seed 7 "
            "--out cli_p1.json --threads 1") == 0);
  CHECK(run("profile --net cli_net.json --samples 500 --seed 7 "
            "--out cli_p2.json --threads 3") == 0);
  std::ifstream f1("cli_p1.json"), f2("cli_p2.json");
  const std::string a((std::istreambuf_iterator<char>(f1)),
                      std::istreambuf_iterator<char>());
  const std::string b((std::istreambuf_iterator<char>(f2)),
                      std::istreambuf_iterator<char>());
  CHECK(a == b);
  std::remove("cli_net.json");
  std::remove("cli_p1.json");
  std::remove("cli_p2.json");
}

TEST_CASE("POLYPROF_THREADS overrides --threads without changing output") {
  CHECK(run("init --arch 3-8-1 --seed 11 --out cli_net.json") == 0);
  CHECK(run("profile --net cli_net.json --samples 400 --seed 2 "
            "--out cli_p1.json --threads 1") == 0);
  const std::string cmd = "POLYPROF_THREADS=4 " + cli() +
                          " profile --net cli_net.json --samples 400 --seed 2 "
                          "--out cli_p2.json --threads 1 >/dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  std::ifstream f1("cli_p1.json"), f2("cli_p2.json");
  const std::string a((std::istreambuf_iterator<char>(f1)),
                      std::istreambuf_iterator<char>());
  const std::string b((std::istreambuf_iterator<char>(f2)),
                      std::istreambuf_iterator<char>());
  CHECK(a == b);
  CHECK(!a.empty());
  std::remove("cli_net.json");
  std::remove("cli_p1.json");
  std::remove("cli_p2.json");
}

TEST_CASE("bounds prints the expected bound values") {
  std::string out;
  CHECK(run("bounds --arch 3-7-1", &out) == 0);
  CHECK(out.find("482") != std::string::npos);
  CHECK(out.find("77") != std::string::npos);
  CHECK(run("bounds --arch 3-8-1", &out) == 0);
  CHECK(out.find("686") != std::string::npos);
  CHECK(out.find("116") != std::string::npos);
  CHECK(run("bounds --arch 3-40-20-1 --rank 2", &out) == 0);
  CHECK(out.find("low rank") != std::string::npos);
}

TEST_CASE("hitrun on net regions and raw systems") {
  CHECK(run("init --arch 3-10-1 --seed 2 --out cli_net.json") == 0);
  {
    std::ofstream p("cli_point.json");
    p << "[0.2, -0.1, 0.3]";
  }
  std::string out;
  CHECK(run("hitrun --net cli_net.json --point cli_point.json --box 1.0 "
            "--checkpoint 1000 --seed 0",
            &out) == 0);
  CHECK(out.find("found=") != std::string::npos);
  CHECK(out.find("of K=16") != std::string::npos);
  CHECK(out.find("iterations=") != std::string::npos);

  {
    std::ofstream s("cli_system.json");
    s << R"({"dim":2,"normals":[[1,0],[-1,0],[0,1],[0,-1]],"offsets":[-1,-1,-1,-1]})";
  }
  CHECK(run("hitrun --system cli_system.json --checkpoint 1000", &out) == 0);
  CHECK(out.find("found=4 of K=4") != std::string::npos);

  std::remove("cli_net.json");
  std::remove("cli_point.json");
  std::remove("cli_system.json");
}

TEST_CASE("cross-section writes polygons and svg") {
  CHECK(run("init --arch 4-8-1 --seed 5 --out cli_net.json") == 0);
  {
    std::ofstream a("cli_a.json");
    a << "[-0.5, 0, 0, 0]";
    std::ofstream b("cli_b.json");
    b << "[0.5, 0.1, 0, 0]";
  }
  std::string out;
  CHECK(run("cross-section --net cli_net.json --p1 cli_a.json --p2 cli_b.json "
            "--extent 1.0 --out cli_cs.json --svg cli_cs.svg",
            &out) == 0);
  CHECK(out.find("polygons=") != std::string::npos);
  std::ifstream svg("cli_cs.svg");
  const std::string s((std::istreambuf_iterator<char>(svg)),
                      std::istreambuf_iterator<char>());
  CHECK(s.find("<svg") != std::string::npos);
  std::remove("cli_net.json");
  std::remove("cli_a.json");
  std::remove("cli_b.json");
  std::remove("cli_cs.json");
  std::remove("cli_cs.svg");
}

TEST_CASE("invalid inputs exit with code 2") {
  std::string out;
  CHECK(run("profile --net does_not_exist.json", &out) == 2);
  CHECK(out.find("error") != std::string::npos);
  CHECK(run("bounds --arch banana", &out) == 2);
  CHECK(run("init --arch 3-0-1 --out x.json", &out) == 2);
  CHECK(run("hitrun --system does_not_exist.json", &out) == 2);
  CHECK(run("nonsense-verb", &out) == 2);
}
