#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "tpa/element.hpp"
#include "tpa/json_io.hpp"
#include "tpa/zassenhaus.hpp"

using namespace tpa;

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "wnq-cli-tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct RunResult {
  int status;
  std::string out;
};

RunResult run_wnq(const std::string& args) {
  fs::path outfile = work_dir() / "stdout.txt";
  std::string cmd = std::string(WNQ_BINARY) + " " + args + " > " + outfile.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(outfile);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

}  // namespace

TEST_CASE("parse_element: stated cases") {
  CHECK(parse_element("e-1 + 2*e3", 5, 5) == Vec{1, 0, 0, 0, 2});
  CHECK(parse_element("0", 5, 5) == Vec{0, 0, 0, 0, 0});
  CHECK(parse_element("  e0-e1  ", 5, 5) == Vec{0, 1, 4, 0, 0});
  CHECK(parse_element("7*e2", 5, 5) == Vec{0, 0, 0, 2, 0});
  CHECK(parse_element("e0 + e0", 5, 5) == Vec{0, 2, 0, 0, 0});

  CHECK_THROWS_AS(parse_element("e5", 5, 5), ParseError);
  CHECK_THROWS_AS(parse_element("e-2", 5, 5), ParseError);
  CHECK_THROWS_AS(parse_element("", 5, 5), ParseError);
  CHECK_THROWS_AS(parse_element("2*", 5, 5), ParseError);
  CHECK_THROWS_AS(parse_element("e0 + + e1", 5, 5), ParseError);
  try {
    parse_element("e0 + e9", 5, 5);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 5);  // start of the offending term
  }
}

TEST_CASE("print_element round trip") {
  CHECK(print_element(Vec{1, 0, 0, 0, 2}) == "e-1 + 2*e3");
  CHECK(print_element(Vec{0, 0, 0, 0, 0}) == "0");
  CHECK(print_element(Vec{0, 3, 0, 0, 0}) == "3*e0");
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    Vec v(7);
    for (auto& c : v) c = static_cast<Scalar>(rng() % 7);
    CHECK(parse_element(print_element(v), 7, 7) == v);
  }
}

TEST_CASE("JSON round trip is exact and byte-stable") {
  ZassenhausPair Z = build_zassenhaus(5, 1);
  Vec q(5, 0);
  q[Z.pos(-1)] = 2;
  q[Z.pos(2)] = 3;
  TwoProductAlgebra A = mutate(Z, q);
  std::string doc = save_algebra(A);
  TwoProductAlgebra B = load_algebra(doc);
  CHECK(B.p == A.p);
  CHECK(B.dim == A.dim);
  CHECK(B.basis_labels == A.basis_labels);
  CHECK(B.circ == A.circ);
  CHECK(B.bracket == A.bracket);
  CHECK(B.tp_verified == A.tp_verified);
  CHECK(save_algebra(B) == doc);

  // Loader tolerates unsorted quadruples; one save pass normalizes.
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(doc);
  REQUIRE(j["circ"].size() >= 2);
  std::swap(j["circ"][0], j["circ"][1]);
  TwoProductAlgebra C = load_algebra(j.dump());
  CHECK(C.circ == A.circ);
  CHECK(save_algebra(C) == doc);

  CHECK_THROWS_AS(load_algebra("{\"format_version\":\"2\"}"), std::invalid_argument);
  CHECK_THROWS_AS(load_algebra("not json at all"), std::exception);
}

TEST_CASE("cli: generate then verify") {
  fs::path f = work_dir() / "w.json";
  RunResult gen = run_wnq("gen --p 5 --n 1 --q \"e-1\" --out " + f.string());
  CHECK(gen.status == 0);
  CHECK(run_wnq("verify --tp " + f.string()).status == 0);
  RunResult one = run_wnq("verify --identity jacobi " + f.string());
  CHECK(one.status == 0);
  CHECK(one.out.find("holds") != std::string::npos);
  CHECK(run_wnq("decompose " + f.string()).status == 0);

  RunResult hd = run_wnq("halfder --product bracket " + f.string());
  CHECK(hd.status == 0);
  CHECK(hd.out.find("dim 5") != std::string::npos);

  RunResult tps = run_wnq("tpspace --p 5 --n 1");
  CHECK(tps.status == 0);
  CHECK(tps.out.find("dim 5") != std::string::npos);
}

TEST_CASE("cli: failing identity reports a witness and exits 1") {
  // A bracket with [x, x] != 0 is not anticommutative.
  TwoProductAlgebra bad = make_algebra(5, 2);
  bad.bracket.set(0, 0, 1, 1);
  bad.bracket.finalize();
  fs::path f = work_dir() / "w2.json";
  write_file(f.string(), save_algebra(bad));
  RunResult r = run_wnq("verify --identity anticommutativity --json " + f.string());
  CHECK(r.status == 1);
  CHECK(r.out.find("\"holds\": false") != std::string::npos);
  CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("cli: normal form output") {
  RunResult r = run_wnq("normalform --p 5 --n 1 --q \"e0 + e1\"");
  CHECK(r.status == 0);
  CHECK(r.out.find("e0") != std::string::npos);
  CHECK(r.out.find("e1") == std::string::npos);
  CHECK(r.out.find("e2") == std::string::npos);
}

TEST_CASE("cli: isomorphism search exit codes") {
  CHECK(run_wnq("isocheck --p 5 --n 1 --q \"2*e-1\" --q2 \"e-1\"").status == 0);
  CHECK(run_wnq("isocheck --p 5 --n 1 --q \"e-1\" --q2 \"e3\"").status == 1);
  CHECK(run_wnq("isocheck --p 5 --n 1 --q \"e-1\" --q2 \"e-1\" --budget 10").status == 3);
}

TEST_CASE("cli: representations") {
  CHECK(run_wnq("rep --p 5 --n 1 --q \"e-1\" --a \"e2\"").status == 0);
  RunResult irr = run_wnq("irr --p 5 --n 1 --q \"e-1\" --a \"0\" --json");
  CHECK(irr.status == 0);
  CHECK(irr.out.find("\"envelope_dim\": 25") != std::string::npos);
}

TEST_CASE("cli: section 6 commands") {
  CHECK(run_wnq("kantor --p 5 --n 1 --q \"e-1\"").status == 0);
  CHECK(run_wnq("weakleibniz --p 5 --n 1 --q \"e-1 + e0\"").status == 0);

  RunResult qp = run_wnq("qpdiag --p 5 --n 1 --q-inverse \"e-1 + e0\"");
  CHECK(qp.status == 0);
  CHECK(qp.out.find("diagonalizable, spectrum = {0,1,2,3,4}") != std::string::npos);

  RunResult np = run_wnq("qpdiag --p 5 --n 1 --q \"e-1\"");
  CHECK(np.status == 0);
  CHECK(np.out.find("nilpotent (index 5)") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run_wnq("frobnicate").status == 2);
  CHECK(run_wnq("verify").status == 2);                           // missing file
  CHECK(run_wnq("normalform --p 5 --n 1 --q \"e9\"").status == 2);  // parse error
  CHECK(run_wnq("gen --p 4 --n 1").status == 2);                  // 4 is not prime
  CHECK(run_wnq("--help").status == 0);
}

TEST_CASE("cli: determinism under a fixed seed") {
  fs::path f = work_dir() / "w3.json";
  REQUIRE(run_wnq("gen --p 5 --n 1 --q \"e3\" --out " + f.string()).status == 0);
  RunResult a = run_wnq("decompose --seed 7 --json " + f.string());
  RunResult b = run_wnq("decompose --seed 7 --json " + f.string());
  CHECK(a.status == b.status);
  CHECK(a.out == b.out);
}
