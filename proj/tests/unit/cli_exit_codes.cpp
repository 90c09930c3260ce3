// Runs the command-line tool and checks its exit status.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string tool;
std::string data;
int failures = 0;

int run(const std::string& args, const std::string& out = "/dev/null") {
  std::string cmd = tool + " " + args + " > " + out + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void expect(const std::string& args, int code) {
  int got = run(args);
  if (got != code) {
    std::fprintf(stderr, "%s: expected %d, got %d\n", args.c_str(), code, got);
    ++failures;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) return 2;
  tool = argv[1];
  data = argv[2];
  const std::string tmp = argv[3];

  expect("presets", 0);
  expect("verify --preset fibonacci --depth 3 --s 1 --backend quadratic:5", 0);
  expect("spectrum --preset thue-morse --depth 3 --s 1 --backend rational", 0);
  expect("spectrum --preset fibonacci --depth 0", 2);
  expect("spectrum --preset fibonacci", 2);
  expect("spectrum --preset fibonacci --matrix-file " + data + "/fibonacci.json --depth 2", 2);
  expect("spectrum --depth 2", 2);
  expect("spectrum --preset nope --depth 2", 2);
  expect("plot --preset fibonacci --depth 2", 2);
  expect("spectrum --preset fibonacci --depth 2 --format xml", 2);
  expect("spectrum --preset fibonacci --depth 2 --backend quadratic:4", 2);
  expect("spectrum --preset fibonacci --depth 2 --bogus", 2);
  expect("weyl --preset fibonacci --depth 10 --grid 5:1", 2);
  expect("verify --matrix-file " + data + "/fibonacci.json --depth 4", 0);
  expect("verify --matrix-file " + data + "/reducible.json --depth 4", 2);
  expect("verify --matrix-file " + data + "/missing.json --depth 4", 2);
  expect("strip --preset penrose --depth 3", 2);
  expect("complexity --preset fibonacci --nmax 50", 0);
  expect("heat --preset fibonacci --tmin 1e-8 --tmax 1e-3", 0);
  expect("ck-check --preset penrose --depth 4", 0);
  expect("--version", 0);

  // --output and the precision variable
  const std::string a = tmp + "/cli_a.csv", b = tmp + "/cli_b.csv";
  expect("spectrum --preset penrose --depth 3 --output " + a, 0);
  run("spectrum --preset penrose --depth 3 --threads 4", b);
  if (slurp(a) != slurp(b) || slurp(a).empty()) {
    std::fprintf(stderr, "--output and stdout differ\n");
    ++failures;
  }
  run("spectrum --preset penrose --depth 2", a);
  std::string env_cmd = "BRATSPEC_PRECISION=256 " + tool + " spectrum --preset penrose --depth 2 > " + b;
  if (std::system(env_cmd.c_str()) != 0 || slurp(b).find("approx:256") == std::string::npos ||
      slurp(a).find("approx:200") == std::string::npos) {
    std::fprintf(stderr, "precision variable ignored\n");
    ++failures;
  }

  if (failures) std::fprintf(stderr, "%d failures\n", failures);
  return failures ? 1 : 0;
}
