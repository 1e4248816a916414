#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gr24/cli.hpp"

namespace {

using gr24::Error;
using gr24::ErrorCode;
using namespace gr24::cli;

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::UsageError, "cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Options {
  std::string matrix, matrix_a, matrix_b, minors;
  std::string pivot;
  bool exact = false;
  bool canonical = false;
  double rel_tol = gr24::Tolerance{}.rel;
  double abs_tol = gr24::Tolerance{}.abs;
  std::string format = "json";
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--rel-tol", opt.rel_tol, "Relative tolerance")->capture_default_str();
  sub->add_option("--abs-tol", opt.abs_tol, "Absolute tolerance")->capture_default_str();
  sub->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "plain"}))
      ->capture_default_str();
}

JobSpec build_job(const CLI::App& app, const Options& opt) {
  JobSpec job;
  job.format = opt.format == "plain" ? OutputFormat::plain : OutputFormat::json;
  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  std::vector<std::string> sources;
  if (name == "minors") {
    job.command = Command::minors;
    sources = {opt.matrix};
  } else if (name == "check") {
    job.command = Command::check;
    sources = {opt.minors};
  } else if (name == "reconstruct") {
    job.command = Command::reconstruct;
    sources = {opt.minors};
    if (!opt.pivot.empty()) job.pivot = gr24::parse_minor_pair(opt.pivot);
    if (opt.canonical) job.mode = ReconstructMode::canonical;
  } else if (name == "project") {
    job.command = Command::project;
    sources = {opt.minors};
  } else if (name == "equivalent") {
    job.command = Command::equivalent;
    sources = {opt.matrix_a, opt.matrix_b};
  } else {
    job.command = Command::pipeline;
    sources = {opt.minors};
  }
  job.tolerance = gr24::Tolerance::make(opt.rel_tol, opt.abs_tol);
  for (const std::string& src : sources)
    job.inputs.push_back(parse_input(read_source(src), input_kind(job.command)));
  return job;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minors, Plücker relation and reconstruction for 2x4 matrices"};
  app.require_subcommand(1);
  Options opt;

  auto* minors = app.add_subcommand("minors", "Six 2x2 minors of a 2x4 matrix");
  minors->add_option("--matrix", opt.matrix, "Matrix JSON file ('-' for stdin)")->required();
  add_common(minors, opt);

  auto* check = app.add_subcommand("check", "Test the Plücker relation");
  check->add_option("--minors", opt.minors, "Minors JSON file ('-' for stdin)")->required();
  add_common(check, opt);

  auto* reconstruct = app.add_subcommand("reconstruct", "Matrix with the given minors");
  reconstruct->add_option("--minors", opt.minors, "Minors JSON file ('-' for stdin)")->required();
  reconstruct->add_option("--pivot", opt.pivot, "Pivot minor")
      ->check(CLI::IsMember({"12", "13", "14", "23", "24", "34"}));
  auto* exact = reconstruct->add_flag("--exact", opt.exact, "Minors equal the input (default)");
  auto* canonical = reconstruct->add_flag("--canonical", opt.canonical, "Pivot columns hold the identity");
  exact->excludes(canonical);
  add_common(reconstruct, opt);

  auto* project = app.add_subcommand("project", "Project noisy minors onto the Plücker quadric");
  project->add_option("--minors", opt.minors, "Minors JSON file ('-' for stdin)")->required();
  add_common(project, opt);

  auto* equivalent = app.add_subcommand("equivalent", "Decide whether B = S A for non-singular S");
  equivalent->add_option("--matrix-a", opt.matrix_a, "Matrix A JSON file")->required();
  equivalent->add_option("--matrix-b", opt.matrix_b, "Matrix B JSON file")->required();
  add_common(equivalent, opt);

  auto* pipeline = app.add_subcommand("pipeline", "project, then reconstruct with the largest pivot");
  pipeline->add_option("--minors", opt.minors, "Minors JSON file ('-' for stdin)")->required();
  add_common(pipeline, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const Outcome out = error_outcome(Error(ErrorCode::UsageError, e.what()), OutputFormat::json);
    std::cout << out.output;
    return out.exit_code;
  }

  const OutputFormat format = opt.format == "plain" ? OutputFormat::plain : OutputFormat::json;
  Outcome out;
  try {
    out = run(build_job(app, opt));
  } catch (const Error& e) {
    out = error_outcome(e, format);
  } catch (const std::exception& e) {
    std::cout << "{\n  \"error\": \"InternalError\"\n}\n";
    return 3;
  }
  std::cout << out.output;
  return out.exit_code;
}
