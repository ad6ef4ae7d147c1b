#pragma once
// Command engine shared by the command-line driver and the acceptance
// runner: loads an algebra document, runs one named command against it, and
// returns the exit status together with a human-readable summary and a
// machine-readable JSON report.
//
// Exit statuses: 0 every asserted identity passed, 1 an assertion failed
// (including "no defining system" verdicts), 2 input error (unreadable
// document, unknown command or class label, enumeration bound exceeded).

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ainf::engine {

struct Options {
  int max_arity = 0;        // 0 = the command's default
  long long bound = 24;     // oracle enumeration bound (free cochain coordinates)
  std::uint64_t seed_a = 0;
  std::uint64_t seed_b = 1;
};

struct Outcome {
  int status = 0;
  std::string text;
  nlohmann::json report;
};

// Known command names, in display order.
const std::vector<std::string>& commands();

Outcome run(const std::string& command,
            const std::vector<std::string>& classes,
            const std::string& document_path, const Options& opt);

// Document round trip: parse, serialize, parse again, compare the algebras
// exactly (basis order included).  Throws std::invalid_argument on documents
// that do not parse.
nlohmann::json serialize_document(const nlohmann::json& doc);
bool roundtrip_identical(const nlohmann::json& doc);

}  // namespace ainf::engine
