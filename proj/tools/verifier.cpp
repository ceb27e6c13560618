// verifier <specfile> [--format json|text] [--truncation N] [--out PATH] [--timing]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rank2/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Checks rank-2 commutativity of fourth-order operators from a job description"};
  std::string specfile;
  std::string format;
  std::optional<int> truncation;
  std::string out_path;
  bool timing = false;
  app.add_option("specfile", specfile, "job description file")->required();
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--truncation", truncation, "expansion order (or Frobenius terms)")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_flag("--timing", timing, "include wall-clock timing in the report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::ifstream in(specfile);
  if (!in) {
    std::cerr << "error: cannot read " << specfile << "\n";
    return 1;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  rank2::JobSpec spec;
  try {
    spec = rank2::parse_spec(buffer.str());
  } catch (const rank2::ParseError& e) {
    std::cerr << specfile << ": " << e.what() << "\n";
    return 1;
  }

  rank2::RunOptions options;
  options.truncation = truncation;
  options.timing = timing;
  rank2::Report report = rank2::run_job(spec, options);

  bool text = format.empty() ? spec.format == rank2::Format::Text : format == "text";
  const std::string& body = text ? report.text : report.json;
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
    out << body;
  }
  return report.exit_code;
}
