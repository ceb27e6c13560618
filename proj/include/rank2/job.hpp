#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rank2/potentials.hpp"

namespace rank2 {

enum class JobKind { Check, Curve, Frobenius, Explore };
enum class Format { Json, Text };

struct RationalPoleSpec {
  Scalar at;
  std::optional<int> n;
  std::map<int, Scalar> phi;
  bool operator==(const RationalPoleSpec&) const = default;
};

struct RationalSpec {
  Scalar constant;
  std::vector<RationalPoleSpec> poles;
  bool operator==(const RationalSpec&) const = default;
};

struct EllipticSpec {
  std::optional<int> n;
  std::optional<Scalar> coeff;
  Scalar g2;
  Scalar g3;
  std::optional<HalfPeriod> shift;
  bool operator==(const EllipticSpec&) const = default;
};

struct PolynomialSpec {
  std::vector<Scalar> V;
  std::vector<Scalar> W;
  bool operator==(const PolynomialSpec&) const = default;
};

using PotentialSpec = std::variant<RationalSpec, EllipticSpec, PolynomialSpec>;

struct JobSpec {
  JobKind kind = JobKind::Check;
  int genus = 1;
  std::optional<int> truncation;
  std::vector<Scalar> lambdas;
  Format format = Format::Json;
  bool force = false;
  std::optional<Scalar> field_sqrt;  // activates Q[t]/(t^2 - value)
  PotentialSpec potential;
  bool operator==(const JobSpec&) const = default;
};

/// Syntax or semantic error in a job description. Line and column are
/// 1-based; `expected` lists the tokens that would have been accepted.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message, std::set<std::string> expected = {});
  int line;
  int column;
  std::set<std::string> expected;
};

JobSpec parse_spec(const std::string& text);
/// Canonical text form; parse_spec(print_spec(s)) reproduces s.
std::string print_spec(const JobSpec& spec);

std::string job_kind_name(JobKind k);

/// Builds the potential a job describes (semantic validation included).
Potential build_potential(const JobSpec& spec);

struct RunOptions {
  std::optional<int> truncation;  // overrides the spec
  bool timing = false;
};

/// Renders a JSON report as plain text.
std::string render_text(const std::string& json);

struct Report {
  int exit_code = 0;
  std::string json;  // pretty-printed, deterministic
  std::string text;
};

/// Exit codes: 0 when every verdict passes, 2 on a mathematical
/// obstruction, 1 on a usage error.
Report run_job(const JobSpec& spec, const RunOptions& options = {});

}  // namespace rank2
