#pragma once

// JSON input parsing and job execution behind the gr24 command-line tool.
// Kept in a header so tests can drive jobs without spawning a process.
//
// Input documents:
//   {"matrix": [[a11, a12, a13, a14], [a21, a22, a23, a24]]}
//   {"minors": {"m12": .., "m13": .., "m14": .., "m23": .., "m24": .., "m34": ..}}

#include <array>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "gr24/core.hpp"
#include "gr24/error.hpp"
#include "gr24/project.hpp"
#include "gr24/reconstruct.hpp"
#include "gr24/tolerance.hpp"

namespace gr24::cli {

using Json = nlohmann::ordered_json;

enum class Command { minors, check, reconstruct, project, equivalent, pipeline };
enum class InputKind { matrix, sextuple };
enum class OutputFormat { json, plain };
enum class ReconstructMode { exact, canonical };

using Input = std::variant<Matrix2x4, MinorSextuple>;

constexpr std::string_view command_name(Command c) {
  switch (c) {
    case Command::minors: return "minors";
    case Command::check: return "check";
    case Command::reconstruct: return "reconstruct";
    case Command::project: return "project";
    case Command::equivalent: return "equivalent";
    case Command::pipeline: return "pipeline";
  }
  return "";
}

constexpr InputKind input_kind(Command c) {
  return (c == Command::minors || c == Command::equivalent) ? InputKind::matrix : InputKind::sextuple;
}

constexpr std::size_t input_count(Command c) { return c == Command::equivalent ? 2 : 1; }

struct JobSpec {
  Command command = Command::minors;
  std::vector<Input> inputs;
  Tolerance tolerance{};
  OutputFormat format = OutputFormat::json;
  std::optional<MinorPair> pivot;
  ReconstructMode mode = ReconstructMode::exact;

  /// Throws UsageError unless the inputs match the command.
  void validate() const {
    tolerance.validate();
    if (inputs.size() != input_count(command))
      throw Error(ErrorCode::UsageError, std::string(command_name(command)) + " takes " +
                                             std::to_string(input_count(command)) + " input(s)");
    const bool want_matrix = input_kind(command) == InputKind::matrix;
    for (const Input& in : inputs)
      if (std::holds_alternative<Matrix2x4>(in) != want_matrix)
        throw Error(ErrorCode::UsageError, std::string(command_name(command)) + " expects " +
                                               (want_matrix ? "matrix" : "minors") + " input");
  }
};

struct Outcome {
  int exit_code = 0;
  std::string output;
};

namespace detail {

inline constexpr std::array<const char*, 6> kMinorKeys{"m12", "m13", "m14", "m23", "m24", "m34"};

inline double read_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw Error(ErrorCode::ParseError, where + ": expected a number");
  return v.get<double>();
}

inline Matrix2x4 matrix_from_json(const Json& v) {
  if (!v.is_array() || v.size() != 2)
    throw Error(ErrorCode::ParseError, "/matrix: expected an array of 2 rows");
  std::array<Matrix2x4::Row, 2> rows{};
  for (std::size_t r = 0; r < 2; ++r) {
    const std::string where = "/matrix/" + std::to_string(r);
    if (!v[r].is_array() || v[r].size() != 4)
      throw Error(ErrorCode::ParseError, where + ": expected a row of 4 numbers");
    for (std::size_t c = 0; c < 4; ++c)
      rows[r][c] = read_number(v[r][c], where + "/" + std::to_string(c));
  }
  return {rows[0], rows[1]};
}

inline MinorSextuple sextuple_from_json(const Json& v) {
  if (!v.is_object()) throw Error(ErrorCode::ParseError, "/minors: expected an object");
  for (const auto& [key, _] : v.items()) {
    bool known = false;
    for (const char* k : kMinorKeys) known = known || key == k;
    if (!known) throw Error(ErrorCode::ParseError, "/minors: unknown key \"" + key + "\"");
  }
  std::array<double, 6> values{};
  for (std::size_t k = 0; k < 6; ++k) {
    if (!v.contains(kMinorKeys[k]))
      throw Error(ErrorCode::ParseError, std::string("/minors: missing key \"") + kMinorKeys[k] + "\"");
    values[k] = read_number(v.at(kMinorKeys[k]), std::string("/minors/") + kMinorKeys[k]);
  }
  return MinorSextuple::from_values(values);
}

// -0.0 prints as "-0.0"; results are reported with a single zero.
inline double clean(double v) { return v + 0.0; }

inline Json to_json(const MinorSextuple& m) {
  Json j = Json::object();
  const auto v = m.values();
  for (std::size_t k = 0; k < 6; ++k) j[kMinorKeys[k]] = clean(v[k]);
  return j;
}

inline Json to_json(const Matrix2x4& a) {
  Json rows = Json::array();
  for (int r = 0; r < 2; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(clean(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const Transform2x2& s) {
  return Json::array({Json::array({clean(s(0, 0)), clean(s(0, 1))}),
                      Json::array({clean(s(1, 0)), clean(s(1, 1))})});
}

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, clean(v));
  return std::string(buf, res.ptr);
}

template <typename Range>
std::string join_numbers(const Range& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ' ';
    out += format_number(v);
  }
  return out;
}

inline std::string plain_matrix(const Matrix2x4& a) {
  return join_numbers(a.row(0)) + "\n" + join_numbers(a.row(1)) + "\n";
}

inline Outcome emit(const Json& doc, std::string plain, OutputFormat format) {
  if (format == OutputFormat::plain) return {0, std::move(plain)};
  return {0, doc.dump(2) + "\n"};
}

inline Outcome run_minors(const JobSpec& job) {
  const auto& a = std::get<Matrix2x4>(job.inputs[0]);
  const MinorSextuple m = minors(a);
  Json doc;
  doc["minors"] = to_json(m);
  doc["rank"] = rank(a, job.tolerance);
  doc["defect"] = clean(plucker_defect(m));
  return emit(doc, join_numbers(m.values()) + "\n", job.format);
}

inline Outcome run_check(const JobSpec& job) {
  const auto& m = std::get<MinorSextuple>(job.inputs[0]);
  const bool ok = satisfies_plucker(m, job.tolerance);
  const double defect = plucker_defect(m);
  Json doc;
  doc["satisfies_plucker"] = ok;
  doc["defect"] = clean(defect);
  return emit(doc, std::string(ok ? "true " : "false ") + format_number(defect) + "\n", job.format);
}

inline Outcome run_reconstruct(const JobSpec& job) {
  const auto& m = std::get<MinorSextuple>(job.inputs[0]);
  const Pivot pivot = job.pivot ? Pivot{*job.pivot} : select_pivot(m, job.tolerance);
  const bool exact = job.mode == ReconstructMode::exact;
  const Matrix2x4 a = exact ? reconstruct_exact(m, pivot, job.tolerance)
                            : reconstruct_canonical(m, pivot, job.tolerance);
  Json doc;
  doc["pivot"] = std::string(label_of(pivot.pair));
  doc["mode"] = exact ? "exact" : "canonical";
  doc["matrix"] = to_json(a);
  doc["minors"] = to_json(minors(a));
  doc["t"] = clean(exact ? 1.0 : 1.0 / m[pivot.pair]);
  return emit(doc, plain_matrix(a), job.format);
}

inline Json projection_json(const ProjectionResult& r) {
  Json doc;
  doc["corrected"] = to_json(r.corrected);
  doc["p"] = clean(r.p);
  doc["defect_before"] = clean(r.defect_before);
  doc["defect_after"] = clean(r.defect_after);
  return doc;
}

inline Outcome run_project(const JobSpec& job) {
  const ProjectionResult r = project(std::get<MinorSextuple>(job.inputs[0]), job.tolerance);
  return emit(projection_json(r), join_numbers(r.corrected.values()) + "\n", job.format);
}

inline Outcome run_equivalent(const JobSpec& job) {
  const auto& a = std::get<Matrix2x4>(job.inputs[0]);
  const auto& b = std::get<Matrix2x4>(job.inputs[1]);
  if (!are_equivalent(a, b, job.tolerance))
    throw Error(ErrorCode::NotEquivalent,
                "row spans differ (proportionality residual " +
                    format_number(proportionality_residual(minors(a), minors(b))) + ")");
  Json doc;
  const Transform2x2 s = recover_transform(a, b, job.tolerance);
  const double t = proportionality_factor(minors(a), minors(b));
  doc["equivalent"] = true;
  doc["t"] = clean(t);
  doc["S"] = to_json(s);
  const std::array<double, 5> plain{t, s(0, 0), s(0, 1), s(1, 0), s(1, 1)};
  return emit(doc, "true " + join_numbers(plain) + "\n", job.format);
}

inline Outcome run_pipeline(const JobSpec& job) {
  const auto& noisy = std::get<MinorSextuple>(job.inputs[0]);
  const ProjectionResult r = project(noisy, job.tolerance);
  const Pivot pivot = select_pivot(r.corrected, job.tolerance);
  const Matrix2x4 a = reconstruct_exact(r.corrected, pivot, job.tolerance);
  Json doc;
  doc["input"] = to_json(noisy);
  doc["projection"] = projection_json(r);
  doc["pivot"] = std::string(label_of(pivot.pair));
  doc["matrix"] = to_json(a);
  doc["reconstructed_minors"] = to_json(minors(a));
  return emit(doc, plain_matrix(a), job.format);
}

}  // namespace detail

/// Parses one input document. Throws ParseError (syntax errors carry line
/// and column) or NonFiniteValue.
inline Input parse_input(std::string_view text, InputKind kind) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  } catch (const nlohmann::json::out_of_range& e) {
    throw Error(ErrorCode::NonFiniteValue, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "top level must be a JSON object");
  const char* key = kind == InputKind::matrix ? "matrix" : "minors";
  if (!doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing \"") + key + "\"");
  if (kind == InputKind::matrix) return detail::matrix_from_json(doc.at(key));
  return detail::sextuple_from_json(doc.at(key));
}

inline int exit_code_for(ErrorCode code) { return is_domain_error(code) ? 1 : 2; }

inline Outcome error_outcome(const Error& e, OutputFormat format) {
  const int code = exit_code_for(e.code());
  if (format == OutputFormat::plain) return {code, "error " + std::string(e.name()) + "\n"};
  Json doc;
  doc["error"] = std::string(e.name());
  if (!e.which().empty()) doc["which"] = e.which();
  doc["message"] = e.message();
  return {code, doc.dump(2) + "\n"};
}

/// Exit 0 with the result document, 1 on domain errors, 2 on usage errors.
inline Outcome run(const JobSpec& job) {
  try {
    job.validate();
    switch (job.command) {
      case Command::minors: return detail::run_minors(job);
      case Command::check: return detail::run_check(job);
      case Command::reconstruct: return detail::run_reconstruct(job);
      case Command::project: return detail::run_project(job);
      case Command::equivalent: return detail::run_equivalent(job);
      case Command::pipeline: return detail::run_pipeline(job);
    }
    throw Error(ErrorCode::UsageError, "unknown command");
  } catch (const Error& e) {
    return error_outcome(e, job.format);
  }
}

}  // namespace gr24::cli
