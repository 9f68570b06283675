#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catkit/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("catkit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path / name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = catkit::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: render round-trips a formula file") {
  TempDir dir;
  std::string path = dir.file("f.fml", "fun s 1\nfun 0 0\n# a comment\n!x ~(s(x) = 0)\n");
  RunResult r = run({"render", "--formula", path});
  CHECK(r.code == 0);
  CHECK(r.out == "fun s 1\nfun 0 0\n(!x (~(s(x) = 0)))\n");
}

TEST_CASE("cli: parse reports the profile and usage errors exit 1") {
  TempDir dir;
  std::string path = dir.file("f.fml", "rel R 1\nR(x)\n");
  RunResult ok = run({"parse", "--formula", path});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("symbols R") != std::string::npos);
  CHECK(ok.out.find("free-fo x") != std::string::npos);

  std::string bad = dir.file("bad.fml", "rel R 1\nR(x, y)\n");
  RunResult fail = run({"parse", "--formula", bad});
  CHECK(fail.code == 1);
  CHECK(!fail.err.empty());

  RunResult missing = run({"parse"});
  CHECK(missing.code == 1);

  RunResult unknown_flag = run({"parse", "--nonsense"});
  CHECK(unknown_flag.code == 1);
}

TEST_CASE("cli: eval against a structure file") {
  TempDir dir;
  std::string f = dir.file("f.fml", "rel E 2\n!x E(x, x)\n");
  std::string m = dir.file("m.str", "domain 2\nrel E 2\nt 0 0\nt 1 1\n");
  RunResult r = run({"eval", "--formula", f, "--model", m});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  std::string m2 = dir.file("m2.str", "domain 2\nrel E 2\nt 0 0\n");
  CHECK(run({"eval", "--formula", f, "--model", m2}).out == "false\n");
}

TEST_CASE("cli: eval-henkin and closure-check consume family blocks") {
  TempDir dir;
  std::string f = dir.file("f.fml", "?X1 !x X1(x)\n");
  std::string weak = dir.file("weak.hstr",
                              "domain 2\nfamily rel 1\nbegin\nend\n");
  RunResult r = run({"eval-henkin", "--formula", f, "--model", weak});
  CHECK(r.code == 0);
  CHECK(r.out == "false\n");

  std::string pool = dir.file("pool.fml", "y1 = y1\n");
  RunResult gen = run({"gen-comprehension", "--pool", pool, "--arity", "1"});
  REQUIRE(gen.code == 0);
  std::string theory = dir.file("inst.thy", gen.out);
  RunResult closure = run({"closure-check", "--model", weak, "--theory", theory});
  CHECK(closure.code == 0);
  CHECK(closure.out.find("verdict not-closed") == 0);
  CHECK(closure.out.find("missing rel 1") != std::string::npos);
}

TEST_CASE("cli: check-cat with a catalogue key and --out") {
  TempDir dir;
  RunResult r = run({"check-cat", "--key", "N2", "--kappa", "4",
                     "--out", (dir.path / "report.txt").string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::string report = dir.slurp("report.txt");
  CHECK(report.find("verdict vacuous") == 0);
  CHECK(report.find("kappa 4") != std::string::npos);
}

TEST_CASE("cli: find-iso on two structure files") {
  TempDir dir;
  std::string a = dir.file("a.str", "domain 2\nrel E 2\nt 0 1\n");
  std::string b = dir.file("b.str", "domain 2\nrel E 2\nt 1 0\n");
  RunResult r = run({"find-iso", "--model", a, "--model", b});
  CHECK(r.code == 0);
  CHECK(r.out == "isomorphism 1 0\nchecked true\n");
  std::string c = dir.file("c.str", "domain 2\nrel E 2\nt 0 0\nt 1 0\n");
  CHECK(run({"find-iso", "--model", a, "--model", c}).out == "none\n");
}

TEST_CASE("cli: capacity errors exit 2") {
  TempDir dir;
  std::string f = dir.file("f.fml", "rel E 2\n!x E(x, x)\n");
  RunResult r = run({"check-cat", "--formula", f, "--kappa", "6", "--capacity", "1000"});
  CHECK(r.code == 2);
}

TEST_CASE("cli: lemma-check agrees and is byte-deterministic") {
  TempDir dir;
  std::string f = dir.file("f.fml", "!x !y x = y\n");
  RunResult first = run({"lemma-check", "--formula", f, "--kappa", "2"});
  RunResult second = run({"lemma-check", "--formula", f, "--kappa", "2"});
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.find("verdict agree") != std::string::npos);
}

TEST_CASE("cli: verify-phi and build-phi") {
  RunResult phi = run({"build-phi"});
  CHECK(phi.code == 0);
  CHECK(phi.out.find("psi (?d ") != std::string::npos);
  CHECK(phi.out.find("phi (?x ") != std::string::npos);

  RunResult verify = run({"verify-phi", "--bound", "6", "--psi-bound", "4"});
  CHECK(verify.code == 0);
  CHECK(verify.out.find("total pass") != std::string::npos);
  CHECK(verify.out.find("identity true") != std::string::npos);
}

TEST_CASE("cli: export-prover composes with gen-pa-doubled") {
  TempDir dir;
  RunResult gen = run({"gen-pa-doubled", "--depth", "1",
                       "--out", (dir.path / "pa.thy").string()});
  REQUIRE(gen.code == 0);
  RunResult exp = run({"export-prover", "--theory", (dir.path / "pa.thy").string(), "--isom"});
  CHECK(exp.code == 0);
  CHECK(exp.out.find("fof(pa_doubled_ax1, axiom,") == 0);
  CHECK(exp.out.find("fof(conjecture_1, conjecture,") != std::string::npos);
  RunResult again = run({"export-prover", "--theory", (dir.path / "pa.thy").string(), "--isom"});
  CHECK(exp.out == again.out);
}

TEST_CASE("cli: catalogue list and show") {
  RunResult list = run({"catalogue", "list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("N2\n") == 0);
  RunResult show = run({"catalogue", "show", "--key", "I2"});
  CHECK(show.code == 0);
  CHECK(show.out.find("key I2") == 0);
  RunResult bad = run({"catalogue", "show", "--key", "nope"});
  CHECK(bad.code == 1);
}

TEST_CASE("cli: help text lists flags") {
  RunResult help = run({"check-cat", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--kappa") != std::string::npos);
  CHECK(help.out.find("--capacity") != std::string::npos);
}
