#include <cctype>
#include <regex>
#include <sstream>

#include "rank2/job.hpp"

namespace rank2 {

ParseError::ParseError(int line, int column, const std::string& message, std::set<std::string> expected)
    : Error([&] {
        std::string s = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
        if (!expected.empty()) {
          s += " (expected one of:";
          for (const auto& e : expected) s += " " + e;
          s += ")";
        }
        return s;
      }()),
      line(line),
      column(column),
      expected(std::move(expected)) {}

std::string job_kind_name(JobKind k) {
  switch (k) {
    case JobKind::Check: return "check";
    case JobKind::Curve: return "curve";
    case JobKind::Frobenius: return "frobenius";
    case JobKind::Explore: return "explore";
  }
  return "unknown";
}

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(text[i++]);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(text[i++]);
    } else if (c == '{' || c == '}') {
      out.push_back({std::string(1, c), line, column});
      advance(text[i++]);
    } else {
      Token t{"", line, column};
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '{' &&
             text[i] != '}' && text[i] != '#') {
        t.text += text[i];
        advance(text[i++]);
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

const std::regex kRational(R"([+-]?[0-9]+/[0-9]+)");
const std::regex kInteger(R"([+-]?[0-9]+)");

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  JobSpec parse() {
    JobSpec spec;
    bool have_job = false, have_potential = false;
    std::set<std::string> seen;
    int last_line = 0;
    const std::set<std::string> directives{"job", "genus", "truncation", "lambda",
                                           "format", "force", "field", "potential"};
    while (!done()) {
      const Token& t = peek();
      if (!directives.count(t.text)) fail(t, "unknown directive '" + t.text + "'", directives);
      if (t.line == last_line) fail(t, "directives must start on a new line");
      last_line = t.line;
      if (!seen.insert(t.text).second) fail(t, "duplicate directive '" + t.text + "'");
      Token key = next();
      if (key.text == "job") {
        Token k = expect_word({"check", "curve", "frobenius", "explore"});
        spec.kind = k.text == "check"       ? JobKind::Check
                    : k.text == "curve"     ? JobKind::Curve
                    : k.text == "frobenius" ? JobKind::Frobenius
                                            : JobKind::Explore;
        have_job = true;
      } else if (key.text == "genus") {
        Token v = peek_or_fail({"<integer>"});
        spec.genus = integer();
        if (spec.genus < 1) fail(v, "genus must be at least 1");
      } else if (key.text == "truncation") {
        Token v = peek_or_fail({"<integer>"});
        int n = integer();
        if (n < 1) fail(v, "truncation must be positive");
        spec.truncation = n;
      } else if (key.text == "lambda") {
        spec.lambdas.push_back(rational());
        while (!done() && is_rational(peek())) spec.lambdas.push_back(rational());
      } else if (key.text == "format") {
        Token f = expect_word({"json", "text"});
        spec.format = f.text == "json" ? Format::Json : Format::Text;
      } else if (key.text == "force") {
        spec.force = true;
      } else if (key.text == "field") {
        expect_word({"sqrt"});
        Token v = peek_or_fail({"<p/q>"});
        Scalar s = rational();
        if (is_rational_square(s.to_rational())) fail(v, "field sqrt of a rational square is not an extension");
        spec.field_sqrt = s;
      } else {
        spec.potential = potential();
        have_potential = true;
      }
    }
    if (!have_job) fail_eof("missing 'job' directive", {"job"});
    if (!have_potential) fail_eof("missing 'potential' block", {"potential"});
    return spec;
  }

 private:
  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg, std::set<std::string> expected = {}) {
    throw ParseError(t.line, t.column, msg, std::move(expected));
  }
  [[noreturn]] void fail_eof(const std::string& msg, std::set<std::string> expected) {
    int line = tokens_.empty() ? 1 : tokens_.back().line;
    int column = tokens_.empty() ? 1 : tokens_.back().column + static_cast<int>(tokens_.back().text.size());
    throw ParseError(line, column, msg, std::move(expected));
  }

  Token peek_or_fail(std::set<std::string> expected) {
    if (done()) fail_eof("unexpected end of input", std::move(expected));
    return peek();
  }

  Token expect_word(std::set<std::string> options) {
    Token t = peek_or_fail(options);
    if (!options.count(t.text)) fail(t, "unexpected '" + t.text + "'", options);
    return next();
  }

  static bool is_rational(const Token& t) { return std::regex_match(t.text, kRational); }

  Scalar rational() {
    Token t = peek_or_fail({"<p/q>"});
    if (!is_rational(t)) {
      fail(t, std::regex_match(t.text, kInteger) ? "rationals must be written p/q" : "expected a rational",
           {"<p/q>"});
    }
    next();
    try {
      return Scalar::parse(t.text);
    } catch (const Error& e) {
      fail(t, e.what());
    }
  }

  int integer() {
    Token t = peek_or_fail({"<integer>"});
    if (!std::regex_match(t.text, kInteger)) fail(t, "expected an integer", {"<integer>"});
    next();
    try {
      return std::stoi(t.text);
    } catch (const std::exception&) {
      fail(t, "integer out of range");
    }
  }

  std::vector<Scalar> rational_list() {
    std::vector<Scalar> out{rational()};
    // A bare integer continues the list so that it gets the p/q diagnostic.
    while (!done() && (is_rational(peek()) || std::regex_match(peek().text, kInteger))) {
      out.push_back(rational());
    }
    return out;
  }

  PotentialSpec potential() {
    Token ctor = expect_word({"rational", "elliptic_wp2", "polynomial"});
    expect_word({"{"});
    if (ctor.text == "rational") return rational_block();
    if (ctor.text == "elliptic_wp2") return elliptic_block(ctor);
    return polynomial_block();
  }

  template <class F>
  void block(const std::set<std::string>& keys, F&& on_key) {
    std::set<std::string> expected = keys;
    expected.insert("}");
    std::set<std::string> seen;
    while (true) {
      Token t = peek_or_fail(expected);
      if (t.text == "}") {
        next();
        return;
      }
      if (!keys.count(t.text)) fail(t, "unknown key '" + t.text + "'", expected);
      if (t.text != "pole" && t.text != "phi" && !seen.insert(t.text).second) {
        fail(t, "duplicate key '" + t.text + "'");
      }
      next();
      on_key(t);
    }
  }

  RationalSpec rational_block() {
    RationalSpec out;
    block({"constant", "pole"}, [&](const Token& key) {
      if (key.text == "constant") {
        out.constant = rational();
        return;
      }
      expect_word({"{"});
      RationalPoleSpec pole;
      bool have_at = false;
      block({"at", "n", "phi"}, [&](const Token& k) {
        if (k.text == "at") {
          pole.at = rational();
          have_at = true;
        } else if (k.text == "n") {
          Token v = peek_or_fail({"<integer>"});
          int n = integer();
          if (n < 1) fail(v, "n must be positive");
          pole.n = n;
        } else {
          Token e = peek_or_fail({"<integer>"});
          int exponent = integer();
          Scalar value = rational();
          if (!pole.phi.emplace(exponent, value).second) fail(e, "duplicate phi exponent");
        }
      });
      if (!have_at) fail(key, "pole block needs 'at'", {"at"});
      for (const auto& other : out.poles) {
        if (other.at == pole.at) fail(key, "duplicate pole location " + pole.at.str());
      }
      out.poles.push_back(std::move(pole));
    });
    return out;
  }

  EllipticSpec elliptic_block(const Token& ctor) {
    EllipticSpec out;
    bool have_g2 = false, have_g3 = false;
    block({"n", "coeff", "g2", "g3", "shift"}, [&](const Token& key) {
      if (key.text == "n") {
        Token v = peek_or_fail({"<integer>"});
        int n = integer();
        if (n < 1) fail(v, "n must be positive");
        out.n = n;
      } else if (key.text == "coeff") {
        out.coeff = rational();
      } else if (key.text == "g2") {
        out.g2 = rational();
        have_g2 = true;
      } else if (key.text == "g3") {
        out.g3 = rational();
        have_g3 = true;
      } else {
        Token s = expect_word({"zero", "plus", "minus"});
        out.shift = s.text == "zero" ? HalfPeriod::Zero : s.text == "plus" ? HalfPeriod::Plus : HalfPeriod::Minus;
      }
    });
    if (out.n.has_value() == out.coeff.has_value()) fail(ctor, "give exactly one of 'n' and 'coeff'", {"n", "coeff"});
    if (!have_g2) fail(ctor, "missing 'g2'", {"g2"});
    if (!have_g3) fail(ctor, "missing 'g3'", {"g3"});
    if (out.shift && !out.g3.is_zero()) fail(ctor, "half-period shift requires g3 = 0/1");
    if (out.shift && (out.n ? *out.n != 1 : *out.coeff != pole_strength(1))) {
      fail(ctor, "half-period shift requires n = 1");
    }
    return out;
  }

  PolynomialSpec polynomial_block() {
    PolynomialSpec out;
    block({"V", "W"}, [&](const Token& key) {
      (key.text == "V" ? out.V : out.W) = rational_list();
    });
    return out;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<Scalar>& values) {
  std::string s;
  for (const auto& v : values) s += " " + v.str();
  return s;
}

}  // namespace

JobSpec parse_spec(const std::string& text) { return Parser(tokenize(text)).parse(); }

std::string print_spec(const JobSpec& spec) {
  std::ostringstream os;
  os << "job " << job_kind_name(spec.kind) << "\n";
  os << "genus " << spec.genus << "\n";
  if (spec.truncation) os << "truncation " << *spec.truncation << "\n";
  if (!spec.lambdas.empty()) os << "lambda" << join(spec.lambdas) << "\n";
  os << "format " << (spec.format == Format::Json ? "json" : "text") << "\n";
  if (spec.force) os << "force\n";
  if (spec.field_sqrt) os << "field sqrt " << spec.field_sqrt->str() << "\n";
  if (const auto* r = std::get_if<RationalSpec>(&spec.potential)) {
    os << "potential rational {\n  constant " << r->constant.str() << "\n";
    for (const auto& pole : r->poles) {
      os << "  pole {\n    at " << pole.at.str() << "\n";
      if (pole.n) os << "    n " << *pole.n << "\n";
      for (const auto& [k, v] : pole.phi) os << "    phi " << k << " " << v.str() << "\n";
      os << "  }\n";
    }
    os << "}\n";
  } else if (const auto* e = std::get_if<EllipticSpec>(&spec.potential)) {
    os << "potential elliptic_wp2 {\n";
    if (e->n) os << "  n " << *e->n << "\n";
    if (e->coeff) os << "  coeff " << e->coeff->str() << "\n";
    os << "  g2 " << e->g2.str() << "\n  g3 " << e->g3.str() << "\n";
    if (e->shift) os << "  shift " << half_period_name(*e->shift) << "\n";
    os << "}\n";
  } else {
    const auto& p = std::get<PolynomialSpec>(spec.potential);
    os << "potential polynomial {\n";
    if (!p.V.empty()) os << "  V" << join(p.V) << "\n";
    if (!p.W.empty()) os << "  W" << join(p.W) << "\n";
    os << "}\n";
  }
  return os.str();
}

Potential build_potential(const JobSpec& spec) {
  FieldPtr field;
  if (spec.field_sqrt) field = make_field(0, spec.field_sqrt->to_rational());
  if (const auto* r = std::get_if<RationalSpec>(&spec.potential)) {
    std::vector<PoleData> poles;
    for (const auto& p : r->poles) poles.push_back(PoleData{p.at, p.n, p.phi});
    return make_rational(r->constant, std::move(poles), field);
  }
  if (const auto* e = std::get_if<EllipticSpec>(&spec.potential)) {
    EllipticData data{e->coeff.value_or(Scalar()), e->n, e->g2, e->g3, e->shift};
    return make_elliptic(std::move(data), field);
  }
  const auto& p = std::get<PolynomialSpec>(spec.potential);
  return make_entire(p.V, p.W);
}

}  // namespace rank2
