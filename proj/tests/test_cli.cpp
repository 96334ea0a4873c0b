#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "aslab/classify/classify.hpp"
#include "aslab/cli/cli.hpp"
#include "aslab/patterns/patterns.hpp"

using namespace aslab;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() / ("aslab_cli_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = "") const {
    auto p = (path_ / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_CASE("documented invocations") {
  auto m = run({"member", "--carrier", "F2((Q))", "--x", "1", "--a", "1"});
  CHECK(m.code == 1);
  CHECK(m.out == "not-in-image: residue-obstruction 1\n");

  auto r = run({"ramsey", "--r", "2", "--s", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("exact: 6\n", 0) == 0);

  TempDir dir;
  const auto p = dir.file("p.txt");
  CHECK(run({"pattern", "gen", "ip", "--carrier", "F2((Q))", "--rows", "3", "--out", p}).code == 0);
  auto v = run({"pattern", "verify", "--file", p});
  CHECK(v.code == 0);
  CHECK(v.out.rfind("verified: yes\n", 0) == 0);
}

TEST_CASE("membership across carriers") {
  CHECK(run({"member", "--carrier", "F4", "--x", "[0,1]"}).out == "not-in-image: trace 1\n");
  auto in = run({"member", "--carrier", "F4", "--x", "[0,1]", "--a", "[0,1]"});
  CHECK(in.code == 0);
  CHECK(in.out.rfind("in-image\n", 0) == 0);
  auto f2t = run({"member", "--carrier", "F2(t)", "--x", "t^2+t"});
  CHECK(f2t.code == 0);
  CHECK(f2t.out == "in-image\nwitness: t\n");
  CHECK(run({"member", "--carrier", "F2(t)", "--x", "t"}).code == 1);
  auto tele = run({"member", "--carrier", "F2((Q))", "--x", "t^(-1)"});
  CHECK(tele.code == 0);
  CHECK(run({"member", "--carrier", "F2((Z))", "--x", "t^(-1)"}).out == "not-in-image: blocked-exponent -1\n");
  CHECK(run({"member", "--carrier", "Qp(3)", "--x", "1"}).code == 2);
}

TEST_CASE("arithmetic subcommands") {
  CHECK(run({"wp", "--carrier", "F4", "--x", "[0,1]"}).out == "wp: [1,0]\n");
  CHECK(run({"wp", "--carrier", "F3(t)", "--x", "t"}).out == "wp: t^3+2*t\n");
  auto red = run({"reduce", "--carrier", "F3(t)", "--x", "t^3+1/t"});
  CHECK(red.code == 0);
  CHECK(red.out.find("witness: t\n") != std::string::npos);
  auto lift = run({"lift-as", "--carrier", "F2((t))", "--a", "1", "--b", "t + t^2 + t^4", "--x0", "0", "--cap", "8"});
  CHECK(lift.code == 0);
  CHECK(lift.out == "root: t + t^4 + O(t^8)\ndefects: 1 2 4 8\n");
  auto padic = run({"lift-as", "--carrier", "Qp(3)", "--prec", "4", "--a", "1", "--b", "51", "--x0", "0"});
  CHECK(padic.code == 0);
  CHECK(padic.out.rfind("root: 57 mod 3^4\n", 0) == 0);
  auto ob = run({"obstruction", "--carrier", "F2((Q))", "--x", "t^(-1)"});
  CHECK(ob.code == 0);
  CHECK(ob.out.find("verified: yes\n") != std::string::npos);
  CHECK(run({"obstruction", "--carrier", "F2((Q))", "--x", "1"}).code == 1);
}

TEST_CASE("decomposition") {
  auto d = run({"decomp", "--group", "Z[1/p^inf]", "--vp", "1", "--p", "3"});
  CHECK(d.code == 0);
  CHECK(d.out ==
        "delta0: Z[1/3^inf]\ndeltap: {0}\nquotient: Z[1/3^inf]\nfinitely-ramified: no\nroughly-p-divisible: yes\n"
        "p-divisible: yes\n");
  auto qp = run({"decomp", "--group", "Z", "--vp", "1", "--p", "5"});
  CHECK(qp.out.find("finitely-ramified: yes e=1\n") != std::string::npos);
  CHECK(run({"decomp", "--group", "Z", "--vp", "-1", "--p", "5"}).code == 2);
}

TEST_CASE("chain condition checks") {
  TempDir dir;
  // The three lines of (Z/2)^2: any two already meet in 0.
  const auto fam = dir.file("f.txt", "ambient: [2,2]\nsubgroup: [[1,0]]\nsubgroup: [[0,1]]\nsubgroup: [[1,1]]\n");
  auto bs = run({"check", "bs", "--file", fam, "--bound", "1"});
  CHECK(bs.code == 1);
  CHECK(run({"check", "bs", "--file", fam, "--bound", "2"}).code == 0);
  const auto cks = run({"check", "cks", "--file", fam, "--bound", "2"});
  CHECK(cks.code != 2);
  CHECK(cks.out.rfind("cks: ", 0) == 0);
  CHECK(run({"check", "xyz", "--file", fam, "--bound", "1"}).code == 2);
}

TEST_CASE("classification subcommands") {
  TempDir dir;
  const auto fpq = dir.file("fpq.txt", "char: (2,2)\ngroup: Q\nhenselian: true\nresidue: finite=true\nhypothesis: nipn 2 pure\n");
  auto c = run({"classify", "--file", fpq});
  CHECK(c.code == 1);
  CHECK(c.out.rfind("aj_case: violation\n", 0) == 0);
  CHECK(c.out.find("  phi(x;y1,y2): exists t x = y1*y2*(t^p-t)\n") != std::string::npos);

  const auto qp = dir.file("qp.txt", "char: (0,3)\ngroup: Z\nvp: 1\nhenselian: true\nresidue: finite=true\nhypothesis: nip pure\n");
  auto q = run({"classify", "--file", qp});
  CHECK(q.code == 0);
  CHECK(q.out.rfind("aj_case: mixed_finitely_ramified\n", 0) == 0);

  CHECK(run({"semitame", "--file", qp}).out == "semitame: false\n");
  const auto eq0 = dir.file("eq0.txt", "char: (0,0)\ngroup: Z\nhenselian: true\ndefectless: true\n");
  CHECK(run({"semitame", "--file", eq0}).out == "semitame: true\n");

  const auto inner = dir.file("inner.txt",
                              "char: (0,3)\ngroup: Q\nvp: 1\nhenselian: true\ndefectless: true\nresidue: perfect=true\n");
  auto comp = run({"compose", "--outer", eq0, "--inner", inner});
  CHECK(comp.code == 0);
  const auto composed = classify::parse_descriptor(comp.out);
  CHECK(composed.group->to_string() == "Z * Q");
  CHECK(composed.semitame == classify::Tri::False);
  CHECK(run({"compose", "--outer", qp, "--inner", inner}).code == 2);

  const auto bad = dir.file("bad.txt", "char: (2,3)\ngroup: Z\n");
  auto e = run({"classify", "--file", bad});
  CHECK(e.code == 2);
  CHECK(e.err.find("InconsistentDescriptor") != std::string::npos);
}

TEST_CASE("ramsey and encoding") {
  CHECK(run({"ramsey", "--n", "3", "--k", "3"}).out == "step4: 26\n");
  CHECK(run({"ramsey", "--r", "3", "--s", "3"}).out == "exact: unknown\nupper: 17\n");
  CHECK(run({"ramsey"}).code == 2);
  auto enc = run({"encode-no-common-root", "--field", "F4", "--poly", "1 0 1", "--poly", "1 1"});
  CHECK(enc.code == 0);
  CHECK(enc.out.find("common-root: yes\nencoded-root: yes\n") != std::string::npos);
  auto none = run({"encode-no-common-root", "--field", "F3", "--poly", "0 1", "--poly", "1 1"});
  CHECK(none.code == 0);
  CHECK(none.out.find("common-root: no\nencoded-root: no\n") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"member", "--carrier", "F4"}).code == 2);
  CHECK(run({"member", "--carrier", "F4", "--x", "1", "--bogus", "1"}).code == 2);
  CHECK(run({"pattern"}).code == 2);
  CHECK(run({"pattern", "gen", "xx", "--carrier", "F4", "--rows", "1"}).code == 2);
  CHECK(run({"pattern", "verify", "--file", "/nonexistent/p.txt"}).code == 2);
  CHECK(run({"member", "--carrier", "F6", "--x", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("budget flag caps enumeration and is restored afterwards") {
  CHECK(run({"--budget", "10", "ramsey", "--r", "2", "--s", "3"}).out == "exact: unknown\nupper: 6\n");
  CHECK(run({"ramsey", "--r", "2", "--s", "3"}).out == "exact: 6\nupper: 6\n");
}

TEST_CASE("determinism: identical argv and seed give identical bytes") {
  TempDir dir;
  for (std::uint64_t seed : {0, 1, 7, 42}) {
    const auto s = std::to_string(seed);
    auto a = run({"pattern", "gen", "tp2", "--carrier", "F2((t))", "--rows", "2", "--cols", "2", "--seed", s});
    auto b = run({"pattern", "gen", "tp2", "--carrier", "F2((t))", "--rows", "2", "--cols", "2", "--seed", s});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto f = dir.file("p" + s + ".txt", a.out);
    CHECK(run({"pattern", "verify", "--file", f}).code == 0);
    auto l1 = run({"pattern", "lift", "--file", dir.file("ip.txt", run({"pattern", "gen", "ip", "--carrier", "F4", "--rows", "1"}).out),
                   "--target", "F4((s))", "--perturb", "--seed", s});
    auto l2 = run({"pattern", "lift", "--file", dir.file("ip.txt"), "--target", "F4((s))", "--perturb", "--seed", s});
    CHECK(l1.code == 0);
    CHECK(l1.out == l2.out);
  }
}

TEST_CASE("round trip: generated artifacts reparse to equal values") {
  TempDir dir;
  std::mt19937_64 rng(2024);
  const char* carriers[] = {"F2((Q))", "F3((Q))", "F2(t)", "F4", "F8", "F2((Z[1/2^inf]))"};
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto* c = carriers[rng() % std::size(carriers)];
    const auto m = std::to_string(1 + rng() % 3);
    auto g = run({"pattern", "gen", "ip", "--carrier", c, "--rows", m});
    if (g.code != 0) continue;
    const auto reparsed = patterns::format_pattern(patterns::parse_pattern(g.out));
    CHECK(reparsed == g.out);
    ++checked;
    if (i % 100 == 0) {
      const auto f = dir.file("rt.txt", g.out);
      auto lifted = run({"pattern", "lift", "--file", f, "--target", "F4((s))"});
      if (lifted.code == 0) CHECK(patterns::format_pattern(patterns::parse_pattern(lifted.out)) == lifted.out);
    }
  }
  CHECK(checked >= 600);
}
