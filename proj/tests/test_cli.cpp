#include <gtest/gtest.h>

#include <sstream>

#include "brute_force.hpp"
#include "kerpair/cli.hpp"
#include "kerpair/text_format.hpp"

using namespace kerpair;
using cli::Json;

namespace {

const std::string kDir = KERPAIR_FIXTURES;

struct CliRun {
  int code = -1;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "kerpair");
  for (auto& a : args) {
    if (a.rfind("@", 0) == 0) a = kDir + "/" + a.substr(1);
  }
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool has_note(const Json& doc, const std::string& text) {
  if (!doc.contains("notes")) return false;
  for (const auto& n : doc["notes"]) {
    if (n.get<std::string>().find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Cli, KernelPairWorkedExample) {
  const CliRun r = run({"--json", "kernel-pair", "@z30.txt", "A", "B"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json d = r.json();
  EXPECT_EQ(d["status"], "ok");
  EXPECT_EQ(d["exit_status"], 0);
  EXPECT_EQ(d["method"], "crt");
  EXPECT_EQ(d["ker_bar"]["cardinality"]["count"], 10);
  std::vector<u64> e;
  for (const auto& x : d["idempotents"]) e.push_back(x["e"]);
  EXPECT_EQ(e, (std::vector<u64>{15, 10, 6}));

  const Submodule bar = cli::submodule_from_json(ring_make(RingKind::ModRing, 30), d["ker_bar"]);
  const auto all = enumerate_elements(bar);
  EXPECT_EQ(bf::VecSet(all.begin(), all.end()), bf::kernel_pair({{15}}, {{10}}, 30));
  EXPECT_EQ(cli::submodule_json(bar), d["ker_bar"]);
}

TEST(Cli, VerifyFlagComparesMethods) {
  const CliRun r = run({"--verify", "--json", "kernel-pair", "@gf5.txt", "A", "B"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["status"], "ok");
  EXPECT_EQ(run({"--verify", "kernel-pair", "@z30.txt", "A", "B"}).code, 0);
}

TEST(Cli, DegenerateNotes) {
  const Json zero_b = run({"--json", "kernel-pair", "@gf3.txt", "I", "O"}).json();
  EXPECT_TRUE(has_note(zero_b, "ker(f₁|0) = M₂"));
  EXPECT_EQ(zero_b["ker_bar"]["dim"], 2);

  const Json zero_a = run({"--json", "kernel-pair", "@gf3.txt", "O", "I"}).json();
  EXPECT_TRUE(has_note(zero_a, "ker(0|I) = 0"));
  EXPECT_TRUE(zero_a["ker_bar"]["basis"].empty());
}

TEST(Cli, Kernel) {
  const Json id = run({"--json", "kernel", "@gf3.txt", "I"}).json();
  EXPECT_EQ(id["dim"], 0);
  const Json z = run({"--json", "kernel", "@gf3.txt", "Z"}).json();
  EXPECT_EQ(z["dim"], 2);
  const Json p = run({"--json", "kernel", "@delay_gf2z.txt", "K"}).json();
  EXPECT_EQ(p["kernel"]["presentation"], "hermite");
  EXPECT_EQ(p["kernel"]["basis"], Json::parse("[[[1],[1]]]"));
}

TEST(Cli, Idempotents) {
  const Json two = run({"--json", "idempotents", "2"}).json();
  ASSERT_EQ(two["idempotents"].size(), 1u);
  EXPECT_EQ(two["idempotents"][0]["e"], 1);
  const Json d = run({"--json", "idempotents", "105"}).json();
  std::vector<u64> e;
  for (const auto& x : d["idempotents"]) e.push_back(x["e"]);
  EXPECT_EQ(e, (std::vector<u64>{70, 21, 15}));
  for (const auto& c : d["checks"]) EXPECT_TRUE(c["passed"].get<bool>());

  const CliRun bad = run({"--json", "idempotents", "12"});
  EXPECT_EQ(bad.code, cli::kExitUsage);
  EXPECT_EQ(bad.json()["error"]["kind"], "NotSquareFree");
}

TEST(Cli, Member) {
  const CliRun yes = run({"--json", "member", "@z30.txt", "A", "B", "3"});
  ASSERT_EQ(yes.code, 0);
  const Json y = yes.json();
  EXPECT_TRUE(y["member"].get<bool>());
  const u64 x = y["witness_x"][0];
  EXPECT_EQ((15 * x + 10 * 3) % 30, 0u);

  const CliRun no = run({"--json", "member", "@z30.txt", "A", "B", "1"});
  EXPECT_EQ(no.code, cli::kExitViolation);
  EXPECT_EQ(no.json()["status"], "not member");

  const Json p = run({"--json", "member", "@delay_gf2z.txt", "A", "B", "[0,0,1]"}).json();
  EXPECT_EQ(p["witness_x"], Json::parse("[[0,1]]"));
  EXPECT_EQ(run({"member", "@delay_gf2z.txt", "A", "B", "[1]"}).code, 1);

  // Z/12 is not square-free: answered by search.
  const CliRun z12 = run({"--json", "member", "@z12.txt", "A", "B", "2"});
  EXPECT_EQ(z12.code, 0);
  EXPECT_EQ(run({"member", "@z12.txt", "A", "B", "1"}).code, 1);

  const CliRun poly_crt = run({"--json", "member", "@z6z.txt", "A", "B", "[3,0,3]"});
  EXPECT_EQ(poly_crt.code, 0) << poly_crt.out;
  EXPECT_EQ(run({"member", "@z6z.txt", "A", "B", "[1]"}).code, 1);
}

TEST(Cli, Simulate) {
  const CliRun r = run({"--json", "simulate", "@shift_gf2.txt", "A", "B", "-", "@inputs_gf2.txt"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json d = r.json();
  EXPECT_EQ(d["steps"], 4);
  std::vector<std::vector<u64>> xs;
  for (const auto& row : d["trajectory"]) xs.push_back(row["x"]);
  ASSERT_GE(xs.size(), 4u);
  EXPECT_EQ(xs[1], (std::vector<u64>{0, 1}));
  EXPECT_EQ(xs[2], (std::vector<u64>{1, 0}));
  EXPECT_EQ(xs[3], (std::vector<u64>{0, 1}));

  const CliRun fixed = run({"--json", "simulate", "@shift_gf2.txt", "A", "B", "@x0_gf2.txt", "@inputs_gf2.txt",
                         "--boundary", "fixed", "--steps", "2"});
  EXPECT_EQ(fixed.code, 0) << fixed.err;
  EXPECT_EQ(fixed.json()["steps"], 2);

  // A = 1, B = 1 over GF(3) with T = 1, u = 1: x0 = x0 + 1 has no solution.
  const CliRun periodic = run({"--json", "simulate", "@gf3.txt", "A", "B", "-", "@inputs_gf2.txt", "--boundary",
                            "periodic", "--steps", "1"});
  EXPECT_EQ(periodic.code, 1);
  EXPECT_EQ(periodic.json()["status"], "not admissible");

  EXPECT_EQ(run({"simulate", "@shift_gf2.txt", "A", "B", "-", "@inputs_gf2.txt", "--boundary", "loop"}).code, 2);
}

TEST(Cli, Verify) {
  const CliRun z = run({"--json", "verify", "@z30.txt", "A", "B"});
  EXPECT_EQ(z.code, 0);
  EXPECT_EQ(z.json()["failed"], 0);

  EXPECT_EQ(run({"verify", "@gf3.txt", "I", "I"}).code, 0);
  EXPECT_EQ(run({"verify", "@delay_gf2z.txt", "A", "B"}).code, 0);

  const CliRun fault = run({"--json", "verify", "@gf3.txt", "I", "I", "--inject-fault", "section"});
  EXPECT_EQ(fault.code, cli::kExitViolation);
  bool splitting_failed = false;
  const Json doc = fault.json();
  for (const auto& c : doc["checks"]) {
    if (c["name"] == "splitting") splitting_failed = !c["passed"].get<bool>();
  }
  EXPECT_TRUE(splitting_failed);
}

TEST(Cli, Errors) {
  const CliRun unavailable = run({"--method", "oracle", "kernel-pair", "@delay_gf2z.txt", "A", "B"});
  EXPECT_EQ(unavailable.code, cli::kExitUsage);
  EXPECT_NE(unavailable.err.find("MethodUnavailable"), std::string::npos);

  const CliRun missing = run({"--json", "kernel", "@gf3.txt", "Q"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_EQ(missing.json()["status"], "error");

  EXPECT_EQ(run({"kernel", "@nothing.txt", "A"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--method", "crt", "kernel-pair", "@z12.txt", "A", "B"}).code, 2);
  EXPECT_EQ(run({"kernel-pair", "@gf3.txt", "I", "A"}).code, 2);

  EXPECT_EQ(cli::exit_code_for(ErrorKind::IdentityViolated), 1);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::BaseChangeViolated), 1);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::ParseError), 2);
}

TEST(Cli, PlainIsRenderOfJson) {
  const std::vector<std::vector<std::string>> cases{{"kernel-pair", "@z30.txt", "A", "B"},
                                                    {"kernel-pair", "@gf3z.txt", "A", "Z"},
                                                    {"idempotents", "30"},
                                                    {"member", "@gf5.txt", "A", "B", "1", "1"},
                                                    {"verify", "@gf5.txt", "A", "B"}};
  for (const auto& c : cases) {
    const CliRun plain = run(c);
    std::vector<std::string> with_json = c;
    with_json.insert(with_json.begin(), "--json");
    Json doc = run(with_json).json();
    const std::string first = plain.out.substr(0, plain.out.find('\n'));
    doc["command"] = first.substr(std::string("command: ").size());
    EXPECT_EQ(cli::render_plain(doc), plain.out) << c[0];
  }
}
