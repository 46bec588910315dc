#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "amalgam/error.hpp"
#include "amalgam/spec_file.hpp"
#include "commands.hpp"

using namespace amalgam;
using amalgam::cli::execute;
using amalgam::cli::Outcome;
namespace fs = std::filesystem;

namespace {

std::string sample(std::string const &name) { return std::string(AMALGAM_SAMPLES_DIR) + "/" + name; }

std::string slurp(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(std::string const &path, std::string const &text)
{
  std::ofstream(path, std::ios::binary) << text;
}

fs::path scratch_dir()
{
  fs::path dir = fs::temp_directory_path() / "amalgam_cli_tests";
  fs::create_directories(dir);
  return dir;
}

ErrorCode parse_error(std::string const &text)
{
  try {
    parse_spec(text);
  } catch (Error const &e) {
    return e.code();
  }
  FAIL("parse succeeded");
  return ErrorCode::ValidationError;
}

std::string const kS3Head = R"(
[group S3]
degree = 3
gens = (1 2), (1 2 3)

[subgroup H < S3]
gens = (1 2)

[subgroup A3 < S3]
gens = (1 2 3)
)";

// writes the certificate of a run to the scratch dir and returns its path
std::string save(Outcome const &o, std::string const &name)
{
  REQUIRE(o.certificate);
  std::string path = (scratch_dir() / name).string();
  spit(path, o.certificate->render());
  return path;
}

std::string replace_once(std::string text, std::string const &from, std::string const &to)
{
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("samples round-trip through print_spec")
{
  for (auto name : {"s3_c2_s3.amg", "s4_s3.amg", "d4_regular.amg"}) {
    CAPTURE(name);
    Spec a = load_spec(sample(name));
    REQUIRE(a.amalgam);
    std::string printed = print_spec(a.file);
    Spec b = parse_spec(printed);
    CHECK(a.file == b.file);
    CHECK(print_spec(b.file) == printed);
  }
}

TEST_CASE("spec objects are built and checked")
{
  Spec s = load_spec(sample("s4_s3.amg"));
  CHECK(s.group("S4").order() == 24);
  CHECK(s.subgroup("V4").order() == 4);
  CHECK(s.split("E").retract().order() == 6);
  CHECK(s.require_amalgam().amalgamated(Factor::A).order() == 6);
  GWord w = s.word("commutator");
  CHECK(w.size() == 4);
  CHECK(s.word("commutator^-1 * commutator").size() == 8);
}

TEST_CASE("parse errors")
{
  SUBCASE("iso with an image of the wrong order")
  {
    CHECK(parse_error(kS3Head + "[iso phi : H -> A3]\nimages = (1 2 3)\n") == ErrorCode::ValidationError);
  }
  SUBCASE("iso onto a subgroup of another order")
  {
    CHECK(parse_error(kS3Head + "[iso phi : H -> H]\nimages = (1 2 3)\n") == ErrorCode::ValidationError);
  }
  SUBCASE("undefined parent")
  {
    CHECK(parse_error("[subgroup H < G]\ngens = (1 2)\n") == ErrorCode::SyntaxError);
  }
  SUBCASE("unknown section")
  {
    CHECK(parse_error("[gruop S3]\n") == ErrorCode::SyntaxError);
  }
  SUBCASE("bad permutation")
  {
    CHECK(parse_error("[group S3]\ndegree = 3\ngens = (1 2\n") == ErrorCode::SyntaxError);
    CHECK(parse_error("[group S3]\ndegree = 3\ngens = (1 4)\n") == ErrorCode::ValidationError);
  }
  SUBCASE("generator outside the parent")
  {
    CHECK(parse_error("[group C3]\ndegree = 3\ngens = (1 2 3)\n[subgroup H < C3]\ngens = (1 2)\n") ==
          ErrorCode::ValidationError);
  }
  SUBCASE("split that does not split")
  {
    CHECK(parse_error(kS3Head + "[split E = A3 : H < S3]\n") == ErrorCode::ValidationError);
  }
  SUBCASE("word before any iso")
  {
    CHECK(parse_error(kS3Head + "[word w]\nvalue = A[(1 2)]\n") == ErrorCode::SyntaxError);
  }
  SUBCASE("line numbers are reported")
  {
    try {
      parse_spec("[group S3]\ndegree = 3\ngens = (1 2), (1 2 3)\n\n[subgroup H < S3]\ngens = (1 2\n");
      FAIL("parse succeeded");
    } catch (Error const &e) {
      CHECK(std::string(e.what()).find("line 6") != std::string::npos);
    }
  }
}

TEST_CASE("word grammar")
{
  Spec s = load_spec(sample("s3_c2_s3.amg"));
  AmalgamSpec const &am = s.require_amalgam();
  GWord w = parse_word("(A[(1 2 3)] * B[(1 2)])^2 * id", am);
  CHECK(format_word(w) == "A[(1 2 3)] * B[(1 2)] * A[(1 2 3)] * B[(1 2)]");
  CHECK(parse_word("id", am).empty());
  CHECK(parse_word("", am).empty());
  CHECK(reduce(am, s.word("g * g^-1")).is_identity());
  CHECK(format_word(parse_word(format_word(w), am)) == format_word(w));
  CHECK_THROWS_AS(parse_word("A[(1 2 3) * B[(1 2)]", am), Error);
  CHECK_THROWS_AS(parse_word("C[(1 2)]", am), Error);
}

TEST_CASE("separate end to end")
{
  std::string spec = sample("s3_c2_s3.amg");
  Outcome o = execute({"separate", spec, "--word", "g", "--cyclic", "id"});
  CHECK(o.exit_code == 0);
  REQUIRE(o.certificate);
  CHECK(o.certificate->value("VERDICT", "verdict") == "witness");
  CHECK(o.certificate->value("TRANSCRIPT", "check").has_value());
  CHECK(o.certificate_path == spec + ".cert");

  SUBCASE("member")
  {
    Outcome m = execute({"separate", spec, "--word", "g^3", "--cyclic", "g"});
    CHECK(m.exit_code == 1);
    CHECK(m.certificate->value("VERDICT", "verdict") == "member");
    CHECK(m.certificate->value("RESULT", "exponent") == "3");
  }
  SUBCASE("budget exhausted")
  {
    Outcome b = execute({"separate", sample("d4_regular.amg"), "--word",
                         "A[(1 2 3 4)(5 6 7 8)]", "--cyclic", "id", "--p", "2", "--image-bound", "1"});
    CHECK(b.exit_code == 2);
    CHECK(b.certificate->value("VERDICT", "verdict") == "budget-exhausted");
  }
  SUBCASE("p-mode witness on a 2-group")
  {
    Outcome b = execute({"separate", sample("d4_regular.amg"), "--word",
                         "A[(1 2 3 4)(5 6 7 8)] * B[(1 2 3 4)(5 6 7 8)]", "--cyclic", "id", "--p", "2"});
    CHECK(b.exit_code == 0);
    CHECK(b.certificate->value("MODE", "mode") == "p = 2");
  }
  SUBCASE("p-mode on S3 is not 2'-isolated")
  {
    Outcome b = execute({"separate", spec, "--word", "g", "--cyclic", "id", "--p", "2"});
    CHECK(b.exit_code == 3);
    CHECK(b.error.find("NotPPrimeIsolated") != std::string::npos);
  }
}

TEST_CASE("other commands")
{
  std::string s3 = sample("s3_c2_s3.amg"), s4 = sample("s4_s3.amg");
  CHECK(execute({"retract", "verify", s4, "--split", "E"}).exit_code == 0);
  Outcome ns = execute({"retract", "verify", s4, "--group", "S4", "--retract", "A4", "--complement", "V4"});
  CHECK(ns.exit_code == 1);
  CHECK(ns.certificate->value("VERDICT", "verdict") == "not-split");
  CHECK(execute({"lift", s4, "--split", "E", "--subgroup", "(1 2 3)"}).exit_code == 0);
  CHECK(execute({"reduce", s3, "--word", "g"}).exit_code == 0);
  Outcome eq = execute({"equal", s3, "--word", "A[(1 2)] * B[(1 2)]", "--other", "id"});
  CHECK(eq.exit_code == 0);
  CHECK(eq.certificate->value("VERDICT", "verdict") == "equal");
  Outcome ne = execute({"equal", s3, "--word", "g", "--other", "id"});
  CHECK(ne.exit_code == 1);
  CHECK(ne.certificate->value("VERDICT", "verdict") == "different");
  CHECK(execute({"coverage", s4}).exit_code == 0);
  CHECK(execute({"delta", s3}).exit_code == 0);

  Outcome d = execute({"delta", s3, "--p", "2"});
  CHECK(d.exit_code == 0);
  CHECK(d.certificate->value("DELTA S3", "members") == "0");

  CHECK(execute({"separate", s3, "--word", "h", "--cyclic", "id"}).exit_code == 3);
  CHECK(execute({"separate", sample("missing.amg"), "--word", "g", "--cyclic", "id"}).exit_code == 3);
  CHECK(execute({"frobnicate", s3}).exit_code == 3);
}

TEST_CASE("certificates are deterministic")
{
  std::string spec = sample("s4_s3.amg");
  std::vector<std::string> args = {"separate", spec, "--word", "commutator", "--cyclic", "A[(1 2 3)]"};
  Outcome a = execute(args);
  args.insert(args.end(), {"--seed", "17"});
  Outcome b = execute(args);
  REQUIRE(a.certificate);
  REQUIRE(b.certificate);
  CHECK(a.certificate->render() == b.certificate->render());
}

TEST_CASE("verify-cert")
{
  std::string spec = sample("s3_c2_s3.amg");
  Outcome o = execute({"separate", spec, "--word", "g", "--cyclic", "id"});
  std::string path = save(o, "separate.cert");
  std::string text = slurp(path);

  Outcome ok = execute({"verify-cert", path});
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("accepted") != std::string::npos);

  auto rejected = [&](std::string const &tampered, std::string const &reason) {
    std::string p = (scratch_dir() / "tampered.cert").string();
    spit(p, tampered);
    Outcome r = execute({"verify-cert", p});
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("rejected: " + reason) != std::string::npos);
  };

  SUBCASE("broken homomorphism")
  {
    rejected(replace_once(text, "A[(1 2 3)] = (1 4 5)(2 3 6)", "A[(1 2 3)] = (1 4)(2 3 6)"),
             "HomomorphismBroken");
  }
  SUBCASE("swapped verdict")
  {
    rejected(replace_once(text, "verdict = witness", "verdict = member"), "VerdictMismatch");
  }
  SUBCASE("edited transcript")
  {
    rejected(replace_once(text, "image order 6", "image order 7"), "BodyMismatch");
  }
  SUBCASE("spec digest")
  {
    rejected(replace_once(text, "sha256 = ", "sha256 = 0"), "InputsMismatch");
  }
  SUBCASE("malformed")
  {
    rejected("[COMMAND\n", "Malformed");
  }
  SUBCASE("not separated")
  {
    // the image of B is trivial, so a witness with the A images copied to
    // B kills g
    std::string t = replace_once(text, "B[(1 2 3)] = id", "B[(1 2 3)] = (1 5 4)(2 6 3)");
    rejected(t, "NotSeparated");
  }

  SUBCASE("delta certificate")
  {
    Outcome d = execute({"delta", spec, "--p", "2"});
    std::string dp = save(d, "delta.cert");
    CHECK(execute({"verify-cert", dp}).exit_code == 0);
    rejected(replace_once(slurp(dp), "members = 0", "members = 1"), "BodyMismatch");
  }
}

} // TEST_SUITE
