#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gf/cli.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = gf::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

// Temp files named per test, removed on scope exit.
struct TempFile {
  std::string path;
  TempFile(const std::string& name, const std::string& content)
      : path("cli_tmp_" + name) {
    std::ofstream f(path, std::ios::binary);
    f << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kZ2 = "gens: a b\nrel: a b a^-1 b^-1\n";
const char* kKill = "gens: a b\nrel: a\n";
const char* kGammaN =
    "{\"a\": {\"presentation\": \"gens: t\\nrel: t t\\n\","
    " \"table\": \"order: 2\\n0 1\\n1 0\\ngen: t 1\\n\"},"
    " \"b\": {\"presentation\": \"gens: a b\\n\"},"
    " \"m\": 2, \"s\": [\"a\", \"b\"]}";
const char* kGammaNp =
    "{\"a\": {\"presentation\": \"gens: t\\nrel: t t\\n\","
    " \"table\": \"order: 2\\n0 1\\n1 0\\ngen: t 1\\n\"},"
    " \"b\": {\"presentation\": \"gens: a b\\n\"},"
    " \"m\": 2, \"s\": [\"b\", \"a\"]}";
const char* kMirrorAmalgam = "{\"kind\": \"mirror\", \"presentation\": \"gens: a b\\nrel: a\\n\"}";

} // namespace

TEST_CASE("fmt canonicalizes and roundtrips") {
  TempFile f("fmt.txt", "# comment\ngens: a b\n\nrel: a b a^-1 b^-1\n");
  RunResult r = run({"fmt", f.path});
  CHECK(r.code == 0);
  CHECK(r.out == kZ2);
  CHECK(r.err.empty());

  TempFile g("fmt2.txt", r.out);
  CHECK(run({"fmt", g.path}).out == r.out);
}

TEST_CASE("missing files and bad grammars are usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"fmt"}).code == 2);
  CHECK(run({"fmt", "no_such_file.txt"}).code == 2);
  CHECK(run({"sc-check", "a.txt", "--format", "yaml"}).code == 2);
  CHECK(run({"lemma-check"}).code == 2);
  RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("fellow-traveller") != std::string::npos);
}

TEST_CASE("sc-check reports the ratio and fails the sixth bound") {
  TempFile f("sc.txt", kZ2);
  RunResult r = run({"sc-check", f.path});
  CHECK(r.code == 1);
  CHECK(r.out.find("lambda: 1/4\n") != std::string::npos);
  CHECK(r.out.find("sixth: fail\n") != std::string::npos);

  TempFile power("scp.txt", "gens: a\nrel: a a\n");
  RunResult bad = run({"sc-check", power.path});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("proper power") != std::string::npos);
}

TEST_CASE("rips emits a certified presentation that re-checks identically") {
  TempFile f("rips_in.txt", kZ2);
  std::string out_path = "cli_tmp_rips_out.txt";
  RunResult r = run({"rips", f.path, "--out", out_path});
  CHECK(r.code == 0);
  CHECK(r.out.find("generators: 4\n") != std::string::npos);
  CHECK(r.out.find("relators: 9\n") != std::string::npos);
  CHECK(r.out.find("certified: yes\n") != std::string::npos);

  std::string lambda_line = r.out.substr(r.out.find("lambda: "));
  lambda_line = lambda_line.substr(0, lambda_line.find('\n') + 1);
  RunResult again = run({"sc-check", out_path});
  CHECK(again.code == 0);
  CHECK(again.out.find(lambda_line) != std::string::npos);
  std::remove(out_path.c_str());

  RunResult small = run({"rips", f.path, "--k", "1"});
  CHECK(small.code == 1);
  CHECK(small.out.find("certified: no\n") != std::string::npos);
}

TEST_CASE("fibre commands answer membership with expressions") {
  TempFile f("fib.txt", kKill);
  RunResult gens = run({"fibre-gens", f.path});
  CHECK(gens.code == 0);
  CHECK(gens.out.find("x1: [a | a]\n") != std::string::npos);
  CHECK(gens.out.find("x3: [a | 1]\n") != std::string::npos);

  RunResult yes = run({"fibre-member", f.path, "b a b^-1"});
  CHECK(yes.code == 0);
  CHECK(yes.out.find("member: yes\n") != std::string::npos);
  CHECK(yes.out.find("expression: ") != std::string::npos);

  RunResult no = run({"fibre-member", f.path, "b"});
  CHECK(no.code == 1);
  CHECK(no.out.find("member: no\n") != std::string::npos);

  // A non-kill presentation only gets the budgeted search.
  TempFile g("fib2.txt", kZ2);
  RunResult found = run({"fibre-member", g.path, "a b a^-1 b^-1"});
  CHECK(found.code == 0);
  RunResult undecided = run({"fibre-member", g.path, "a", "--budget", "2"});
  CHECK(undecided.code == 3);
  CHECK(undecided.out.find("member: undecided\n") != std::string::npos);
  CHECK(undecided.out.find("witness") == std::string::npos);
}

TEST_CASE("conjugacy pipeline emits instances and searches them") {
  TempFile q("conj_q.txt", kKill);
  TempFile am("conj_am.json", kMirrorAmalgam);

  RunResult inst = run({"conj-instance", q.path, "b b2", "--format", "json"});
  CHECK(inst.code == 0);
  nlohmann::json rec = nlohmann::json::parse(inst.out);
  CHECK(rec["kind"] == "conj-instance");
  CHECK(rec["verdict"] == "yes");
  std::string u = rec["words"]["u"].get<std::string>();
  std::string v = rec["words"]["v"].get<std::string>();

  RunResult found = run({"conj-search", am.path, u, v});
  CHECK(found.code == 0);
  CHECK(found.out.find("verdict: yes\n") != std::string::npos);
  CHECK(found.out.find("witness: ") != std::string::npos);

  RunResult no_inst = run({"conj-instance", q.path, "b", "--format", "json"});
  nlohmann::json no_rec = nlohmann::json::parse(no_inst.out);
  CHECK(no_rec["verdict"] == "no");
  RunResult no = run({"conj-search", am.path, no_rec["words"]["u"].get<std::string>(),
                      no_rec["words"]["v"].get<std::string>()});
  CHECK(no.code == 1);
  CHECK(no.out.find("verdict: no\n") != std::string::npos);
  CHECK(no.out.find("witness") == std::string::npos);
}

TEST_CASE("zero radius refuses to decide unequal words") {
  TempFile am("zr.json", kMirrorAmalgam);
  RunResult r = run({"conj-search", "--radius", "0", am.path, "b", "z z2"});
  CHECK(r.code == 3);
  CHECK(r.out.find("verdict: undecided\n") != std::string::npos);
  CHECK(r.out.find("witness") == std::string::npos);

  RunResult same = run({"conj-search", "--radius", "0", am.path, "z z2", "z z2"});
  CHECK(same.code == 0);
  CHECK(same.out.find("witness: 1\n") != std::string::npos);
}

TEST_CASE("free double amalgams drive the centralizer command") {
  TempFile am("fd.json",
              "{\"kind\": \"free-double\", \"gens\": [\"a\", \"b\"], \"edge_gens\": [\"a\"]}");
  // Ball enumeration needs a finite edge, so this is an input-class error.
  RunResult r = run({"centralizer", am.path, "a", "--radius", "2"});
  CHECK(r.code == 2);

  RunResult search = run({"conj-search", am.path, "b a b^-1", "b_bar a b_bar^-1"});
  CHECK(search.code == 0);
  CHECK(search.out.find("witness:") != std::string::npos);
  // Infinite edge: the search confirms with a witness but never refutes.
  RunResult far = run({"conj-search", am.path, "b", "a"});
  CHECK(far.code == 3);
  CHECK(far.out.find("witness") == std::string::npos);
}

TEST_CASE("gamma pipeline emits verifies and retracts") {
  TempFile gn("gn.json", kGammaN);
  TempFile gnp("gnp.json", kGammaNp);

  RunResult emit = run({"gamma-emit", gn.path});
  CHECK(emit.code == 0);
  CHECK(emit.out.find("generators: 14\n") != std::string::npos);
  CHECK(emit.out.find("relators: 30\n") != std::string::npos);
  CHECK(emit.out.find("---\ngens: t a b sg1") != std::string::npos);

  RunResult retract = run({"retract", gn.path, "tu1_bar sg1 a t"});
  CHECK(retract.code == 0);
  CHECK(retract.out.find("word: tu1 sg1\n") != std::string::npos);

  std::string rec_path = "cli_tmp_iso_rec.json";
  RunResult iso =
      run({"iso-witness", gn.path, gnp.path, "--format", "json", "--out", rec_path});
  CHECK(iso.code == 0);
  RunResult verify = run({"verify-cert", rec_path});
  CHECK(verify.code == 0);
  CHECK(verify.out.find("verdict: yes\n") != std::string::npos);

  nlohmann::json rec = nlohmann::json::parse(slurp(rec_path));
  rec["forward"]["images"][3] = std::string(rec["forward"]["images"][3]) + " t";
  TempFile bad("iso_bad.json", rec.dump());
  RunResult broken = run({"verify-cert", bad.path});
  CHECK(broken.code == 1);
  CHECK(broken.out.find("verdict: no\n") != std::string::npos);
  std::remove(rec_path.c_str());
}

TEST_CASE("rapaport command reports moves and images") {
  TempFile f("rap.json",
             "{\"q\": {\"table\": \"order: 2\\n0 1\\n1 0\\ngen: g 1\\n\"},"
             " \"basis\": [\"s\", \"t\"], \"images\": [\"g\"], \"targets\": [\"g\"]}");
  RunResult r = run({"rapaport", f.path});
  CHECK(r.code == 0);
  CHECK(r.out.find("image: s -> t^-1\n") != std::string::npos);
  CHECK(r.out.find("image: t -> t s\n") != std::string::npos);

  TempFile miss("rap2.json",
                "{\"q\": {\"table\": \"order: 2\\n0 1\\n1 0\\ngen: g 1\\n\"},"
                " \"basis\": [\"s\", \"t\"], \"images\": [\"1\"], \"targets\": [\"g\"]}");
  CHECK(run({"rapaport", miss.path}).code == 3);
}

TEST_CASE("fellow traveller measures the reduced combing") {
  RunResult r = run({"fellow-traveller", "a", "b", "--radius", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("k: 1\n") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  TempFile f("det.txt", kZ2);
  TempFile gn("det_gn.json", kGammaN);
  TempFile gnp("det_gnp.json", kGammaNp);
  std::vector<std::vector<std::string>> cases = {
      {"sc-check", f.path},
      {"rips", f.path, "--format", "json"},
      {"iso-witness", gn.path, gnp.path, "--format", "json"},
      {"fellow-traveller", "a", "b"},
  };
  for (const auto& args : cases) {
    RunResult first = run(args);
    RunResult second = run(args);
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
    CHECK(first.err == second.err);
  }
}
