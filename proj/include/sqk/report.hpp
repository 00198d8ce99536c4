#pragma once

// Command layer shared by the `sqk` tool and the tests: each command turns
// input bytes into a Report whose payload has a fixed key order.

#include <openssl/evp.h>

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sqk/closure.hpp"
#include "sqk/dsl.hpp"
#include "sqk/error.hpp"
#include "sqk/gallery.hpp"
#include "sqk/k0.hpp"
#include "sqk/nerve.hpp"
#include "sqk/pi1.hpp"
#include "sqk/squares.hpp"

namespace sqk {

using Json = nlohmann::ordered_json;

struct Diagnostic {
  std::string severity = "error";
  std::string code;
  std::string message;
  std::optional<std::size_t> line;
  std::optional<std::size_t> column;
  std::vector<std::string> expected;
};

struct Report {
  std::string command;
  std::string input_digest;
  Json result = Json::object();
  std::vector<Diagnostic> diagnostics;

  bool has_errors() const {
    for (const auto& d : diagnostics)
      if (d.severity == "error") return true;
    return false;
  }

  /// 0 success, 2 if the input failed to parse, 1 for any other error.
  int exit_code() const {
    for (const auto& d : diagnostics)
      if (d.severity == "error" && d.line) return 2;
    return has_errors() ? 1 : 0;
  }

  Json to_json() const {
    Json diags = Json::array();
    for (const auto& d : diagnostics) {
      Json j;
      j["severity"] = d.severity;
      j["code"] = d.code;
      j["message"] = d.message;
      if (d.line) j["line"] = *d.line;
      if (d.column) j["column"] = *d.column;
      if (!d.expected.empty()) j["expected"] = d.expected;
      diags.push_back(std::move(j));
    }
    Json j;
    j["command"] = command;
    j["input_digest"] = input_digest;
    j["result"] = result;
    j["diagnostics"] = std::move(diags);
    return j;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

struct RunOptions {
  EnumerationCaps caps;
  std::optional<std::string> emit;  // file receiving the serialized category (close, example)
};

/// "sha256:<hex>" of `bytes`.
inline std::string sha256_digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("digest-failed", "SHA-256 computation failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

namespace detail {

inline Json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline Json invariants_json(const AbelianInvariants& inv) {
  Json j;
  j["rank"] = inv.rank;
  j["torsion"] = Json::array();
  for (const auto& t : inv.torsion) j["torsion"].push_back(integer_json(t));
  return j;
}

inline Json validation_json(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["violations"] = Json::array();
  for (const auto& v : r.violations) {
    Json e;
    e["rule"] = v.rule;
    e["ids"] = v.ids;
    e["note"] = v.note;
    j["violations"].push_back(std::move(e));
  }
  return j;
}

inline std::string letter_text(const GroupPresentation& p, const Letter& l) {
  return p.generators[l.generator] + (l.inverse ? "^-1" : "");
}

inline SquaresCategory valid_category(std::string_view text) {
  SquaresCategory sq = elaborate(parse_sqcat(text));
  const ValidationReport r = validate_squares_category(sq);
  if (!r.ok) {
    const Violation& v = r.violations.front();
    throw Error("invalid-category", "category fails " + v.rule + (v.note.empty() ? "" : ": " + v.note));
  }
  return sq;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io-error", "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("io-error", "cannot write '" + path + "'");
}

struct ExampleRequest {
  SquaresCategory category;
  std::string name;
};

/// `finset <n>`, `grid <N>`, `vect <d>`, `point`, `toy`.
inline ExampleRequest build_example(const std::vector<std::string>& args) {
  if (args.empty()) throw Error("usage", "example needs a name: finset, grid, vect, point or toy");
  const std::string& kind = args[0];
  auto param = [&]() -> int {
    if (args.size() != 2) throw Error("usage", "example " + kind + " takes one integer parameter");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(args[1], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != args[1].size() || v < 1) throw Error("usage", "parameter must be a positive integer");
    return v;
  };
  auto no_param = [&] {
    if (args.size() != 1) throw Error("usage", "example " + kind + " takes no parameter");
  };
  if (kind == "finset") {
    const int n = param();
    return {finset_category(n), "finset" + std::to_string(n)};
  }
  if (kind == "grid") {
    const int n = param();
    return {grid_interval_category(n), "grid" + std::to_string(n)};
  }
  if (kind == "vect") {
    const int d = param();
    return {vect_f2_category(d), "vect" + std::to_string(d)};
  }
  if (kind == "point") {
    no_param();
    return {point_category(), "point"};
  }
  if (kind == "toy") {
    no_param();
    return {two_object_category(), "toy"};
  }
  throw Error("usage", "unknown example '" + kind + "'");
}

inline Json run_payload(const std::string& command, std::string_view input, const std::vector<std::string>& args,
                        const RunOptions& opts, std::vector<Diagnostic>& diagnostics) {
  Json j;
  if (command == "validate") {
    SquaresCategory sq = elaborate(parse_sqcat(input));
    const ValidationReport r = validate_squares_category(sq);
    j = validation_json(r);
    if (!r.ok)
      diagnostics.push_back({"error", "invalid-category",
                             std::to_string(r.violations.size()) + " axiom violation(s), first: " +
                                 r.violations.front().rule,
                             std::nullopt, std::nullopt, {}});
    return j;
  }
  if (command == "close") {
    const SqcatDocument doc = parse_sqcat(input, DocumentMode::generating);
    const std::string text = serialize(to_document(generate_from_squares(elaborate_generating(doc)), doc.name));
    if (opts.emit) write_file(*opts.emit, text);
    j["name"] = doc.name;
    j["sqcat"] = text;
    return j;
  }
  if (command == "k0") return invariants_json(k0_invariants(valid_category(input)));
  if (command == "pi1") {
    const SquaresCategory sq = valid_category(input);
    const GroupPresentation p = pi1_presentation(diagonal_2_skeleton(sq, opts.caps), sq.base());
    j["generators"] = p.generators;
    j["relators"] = Json::array();
    for (std::size_t r = 0; r < p.relator_count(); ++r) {
      Json w = Json::array();
      for (const Letter& l : p.relator(r)) w.push_back(letter_text(p, l));
      j["relators"].push_back(std::move(w));
    }
    j["abelianization"] = invariants_json(abelianize(p));
    return j;
  }
  if (command == "compare") {
    const SquaresCategory sq = valid_category(input);
    const AbelianInvariants k0 = k0_invariants(sq);
    const AbelianInvariants ab = abelianize(pi1_presentation(diagonal_2_skeleton(sq, opts.caps), sq.base()));
    j["k0"] = invariants_json(k0);
    j["pi1_abelianized"] = invariants_json(ab);
    j["agree"] = k0 == ab;
    j["star_condition"] = check_star_condition(sq).holds;
    return j;
  }
  if (command == "example") {
    const ExampleRequest ex = build_example(args);
    const std::string text = serialize(to_document(ex.category, ex.name));
    if (opts.emit) write_file(*opts.emit, text);
    j["name"] = ex.name;
    j["sqcat"] = text;
    return j;
  }
  throw Error("usage", "unknown command '" + command + "'");
}

}  // namespace detail

/// Runs `command` on `input` (document bytes; ignored by `example`, which reads
/// `args`). Module errors land in the diagnostics verbatim.
inline Report run_command(const std::string& command, std::string_view input,
                          const std::vector<std::string>& args = {}, const RunOptions& opts = {}) {
  Report report;
  report.command = command;
  if (command == "example") {
    std::string joined;
    for (const auto& a : args) joined += (joined.empty() ? "" : " ") + a;
    report.input_digest = sha256_digest(joined);
  } else {
    report.input_digest = sha256_digest(input);
  }
  try {
    report.result = detail::run_payload(command, input, args, opts, report.diagnostics);
  } catch (const ParseError& e) {
    report.diagnostics.push_back({"error", e.code(), e.what(), e.line(), e.column(), e.expected()});
  } catch (const Error& e) {
    report.diagnostics.push_back({"error", e.code(), e.what(), std::nullopt, std::nullopt, {}});
  }
  return report;
}

}  // namespace sqk
