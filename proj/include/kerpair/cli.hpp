#pragma once

// Command-line front end. Every command builds a JSON result document; plain
// output is rendered from that document.
//
// Exit codes: 0 success, 1 violation / not a member / not admissible,
// 2 usage or parse error.

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "kerpair/submodule.hpp"

namespace kerpair::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

Json submodule_json(const Submodule& s);
/// Inverse of `submodule_json`: rebuilds and re-canonicalizes. Extra keys
/// (cardinality, generators, prime) are ignored.
Submodule submodule_from_json(const RingSpec& ring, const Json& j);

/// Indented key/value rendering of a result document.
std::string render_plain(const Json& doc);

int exit_code_for(ErrorKind kind) noexcept;

}  // namespace kerpair::cli
