#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "rank2/job.hpp"

using namespace rank2;
using json = nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

JobSpec job_file(const std::string& name) { return parse_spec(slurp(std::filesystem::path(JOBS_DIR) / name)); }

ParseError parse_failure(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("parsed without error: " << text);
  throw Error("unreachable");
}

Scalar rat(oracle::Gen& gen) { return Scalar(gen.rational(40, 7)); }

JobSpec random_spec(oracle::Gen& gen) {
  JobSpec s;
  s.kind = static_cast<JobKind>(gen.integer(0, 3));
  s.genus = gen.integer(1, 4);
  if (gen.coin()) s.truncation = gen.integer(1, 80);
  for (int i = 0, n = gen.integer(0, 3); i < n; ++i) s.lambdas.push_back(rat(gen));
  s.format = gen.coin() ? Format::Json : Format::Text;
  s.force = gen.coin();
  if (gen.coin()) {
    mpq_class q;
    do {
      q = gen.nonzero_rational(20, 4);
    } while (is_rational_square(q));
    s.field_sqrt = Scalar(q);
  }
  switch (gen.integer(0, 2)) {
    case 0: {
      RationalSpec r;
      r.constant = rat(gen);
      for (int i = 0, n = gen.integer(0, 3); i < n; ++i) {
        RationalPoleSpec pole;
        bool fresh;
        do {
          pole.at = rat(gen);
          fresh = true;
          for (const auto& other : r.poles) fresh = fresh && !(other.at == pole.at);
        } while (!fresh);
        if (gen.coin()) pole.n = gen.integer(1, 3);
        for (int k = -5; k <= 3; ++k)
          if (gen.integer(0, 2) == 0) pole.phi[k] = rat(gen);
        r.poles.push_back(pole);
      }
      s.potential = r;
      break;
    }
    case 1: {
      EllipticSpec e;
      if (gen.coin()) {
        e.n = gen.integer(1, 3);
      } else {
        e.coeff = rat(gen);
      }
      e.g2 = rat(gen);
      e.g3 = rat(gen);
      if (e.n == 1 && gen.coin()) {
        e.g3 = Scalar();
        e.shift = static_cast<HalfPeriod>(gen.integer(0, 2));
      }
      s.potential = e;
      break;
    }
    default: {
      PolynomialSpec p;
      for (int i = 0, n = gen.integer(0, 4); i < n; ++i) p.V.push_back(rat(gen));
      for (int i = 0, n = gen.integer(0, 4); i < n; ++i) p.W.push_back(rat(gen));
      s.potential = p;
    }
  }
  return s;
}

}  // namespace

TEST_CASE("sample job files parse") {
  JobSpec s = job_file("rational_n1.job");
  CHECK(s.kind == JobKind::Check);
  CHECK(s.genus == 1);
  const auto& r = std::get<RationalSpec>(s.potential);
  REQUIRE(r.poles.size() == 1);
  CHECK(r.poles[0].n == 1);
  CHECK(r.poles[0].phi.at(-4) == Scalar(280));

  JobSpec e = job_file("wp2_n2.job");
  CHECK(e.truncation == 64);
  CHECK(std::get<EllipticSpec>(e.potential).n == 2);

  JobSpec f = job_file("frobenius_n1.job");
  CHECK(f.kind == JobKind::Frobenius);
  CHECK(f.lambdas == std::vector<Scalar>{Scalar(0), Scalar(1), Scalar(-2)});

  JobSpec x = job_file("explore_two_poles.job");
  CHECK(x.force);
  CHECK(x.format == Format::Text);
  CHECK(std::get<EllipticSpec>(job_file("two_wp2.job").potential).shift == HalfPeriod::Zero);
  CHECK(std::get<PolynomialSpec>(job_file("dixmier_cubic.job").potential).V.size() == 4);
}

TEST_CASE("parse errors carry positions") {
  ParseError genus = parse_failure("job check\ngenus 0\npotential polynomial { W 0/1 1/1 }\n");
  CHECK(genus.line == 2);
  CHECK(genus.column == 7);

  ParseError bare = parse_failure("job check\npotential polynomial {\n  W 0/1 1\n}\n");
  CHECK(bare.line == 3);
  CHECK(bare.column == 9);
  CHECK(std::string(bare.what()).find("p/q") != std::string::npos);

  ParseError key = parse_failure("job check\npotential rational { constant 0/1 colour 1/1 }\n");
  CHECK(key.line == 2);
  CHECK(key.expected.count("pole") == 1);

  ParseError kind = parse_failure("job solve\n");
  CHECK(kind.expected.count("check") == 1);

  CHECK(parse_failure("job check\njob check\npotential polynomial { }\n").line == 2);
  CHECK(parse_failure("job check genus 1\npotential polynomial { }\n").line == 1);
  CHECK(parse_failure("job check\nfield sqrt 4/1\npotential polynomial { }\n").line == 2);
  parse_failure("job check\npotential elliptic_wp2 { n 1 coeff 280/1 g2 1/1 g3 0/1 }\n");
  parse_failure("job check\npotential elliptic_wp2 { n 1 g2 1/1 g3 1/1 shift zero }\n");
  parse_failure("job check\npotential rational { constant 0/1 pole { n 1 } }\n");
  parse_failure("job check\npotential rational { constant 0/1 pole { at 0/1 phi -4 1/1 phi -4 2/1 } }\n");
  parse_failure("job check\npotential polynomial { W 0/1\n");
  parse_failure("job check\n");
}

TEST_CASE("parse, print and parse again is the identity") {
  oracle::Gen gen(99);
  for (int i = 0; i < 100; ++i) {
    JobSpec s = random_spec(gen);
    std::string text = print_spec(s);
    JobSpec back = parse_spec(text);
    CHECK(back == s);
    CHECK(print_spec(back) == text);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  JobSpec s = parse_spec("# header\n\njob curve   # trailing\n  genus 2\npotential polynomial {\n # inner\n W 1/2 }\n");
  CHECK(s.kind == JobKind::Curve);
  CHECK(s.genus == 2);
  CHECK(std::get<PolynomialSpec>(s.potential).W == std::vector<Scalar>{Scalar::ratio(1, 2)});
}

TEST_CASE("reports are deterministic") {
  for (const char* name : {"wp2_g2_4.job", "two_wp2.job", "frobenius_n1.job", "explore_two_poles.job", "wp2_g3_1.job"}) {
    JobSpec s = job_file(name);
    Report a = run_job(s), b = run_job(s);
    CHECK(a.json == b.json);
    CHECK(a.text == b.text);
    CHECK(json::parse(a.json)["schema"] == 1);
  }
}

TEST_CASE("exit codes and report contents") {
  Report ok = run_job(job_file("wp2_g2_4.job"));
  CHECK(ok.exit_code == 0);
  json j = json::parse(ok.json);
  CHECK(j["constants"]["C1"] == "-168/1");
  CHECK(j["curve"]["discriminant"] == "60692889600/1");
  CHECK(j["curve"]["coeffs"].size() == 4);
  CHECK(j["truncation"]["order"] == 17);
  CHECK(j["truncation"]["auto"] == true);
  CHECK(j["exit_code"] == 0);
  CHECK_FALSE(j.contains("timing_ms"));
  CHECK(ok.text.find("curve: w^2 = z^3 - 336*z^2 + 29904*z - 282240") != std::string::npos);

  Report bad = run_job(job_file("wp2_g3_1.job"));
  CHECK(bad.exit_code == 2);
  json jb = json::parse(bad.json);
  REQUIRE(jb["obstructions"].size() >= 1);
  CHECK(jb["obstructions"][0]["tag"] == "coefficient_pattern");
  CHECK(jb["obstructions"][0]["k"] == 1);
  CHECK(jb["obstructions"][0]["l"] == 2);
  CHECK(jb["obstructions"][0]["value"] == "20/1");

  CHECK(run_job(job_file("linear_u.job")).exit_code == 2);
  CHECK(run_job(job_file("frobenius_forced.job")).exit_code == 2);
  CHECK(run_job(job_file("frobenius_n1.job")).exit_code == 0);
  CHECK(run_job(job_file("dixmier_cubic.job")).exit_code == 0);

  RunOptions timed;
  timed.timing = true;
  CHECK(json::parse(run_job(job_file("rational_n1.job"), timed).json).contains("timing_ms"));

  RunOptions tiny;
  tiny.truncation = 3;
  Report low = run_job(job_file("wp2_g2_4.job"), tiny);
  CHECK(low.exit_code == 1);
  CHECK(json::parse(low.json).contains("error"));
}

TEST_CASE("truncation override is recorded") {
  RunOptions opt;
  opt.truncation = 30;
  json j = json::parse(run_job(job_file("wp2_g2_4.job"), opt).json);
  CHECK(j["truncation"]["order"] == 30);
  CHECK(j["truncation"]["auto"] == false);
  CHECK(j["constants"]["C1"] == "-168/1");
}

TEST_CASE("explore reports are marked exploratory") {
  Report r = run_job(job_file("explore_two_poles.job"));
  CHECK(r.exit_code == 0);
  json j = json::parse(r.json);
  CHECK(j["verdicts"][0]["status"] == "EXPLORATORY");
  CHECK(j["verdicts"][0]["ran"] == true);
}
