#pragma once

#include <string>

#include "lipext/extension.hpp"
#include "lipext/metric.hpp"
#include "lipext/oracle.hpp"

namespace lipext {

/// Parses a space descriptor from a kind string ("real-sup", "euclid",
/// "complex", "seq-sup", "mn", "mn-sa") and a parameter.
SpaceDescriptor parse_descriptor(const std::string& kind, int param);

/**
 * Reads a problem file:
 * {
 *   "space":  {"kind": "mn-sa", "n": 2},
 *   "metric": {"labels": [...], "dist": [[...], ...]},
 *   "subset": ["a", ...],
 *   "values": {"a": <element>, ...}
 * }
 * Element payloads: list of reals for the real kinds, [re, im] for the
 * plane, list of [re, im] for seq-sup, nested rows of [re, im] for the
 * matrix kinds.  Vector kinds accept "k" as the parameter key, matrix kinds
 * "n"; either key works for either.
 *
 * @throw std::invalid_argument on malformed input.
 */
ProblemInstance read_problem(const std::string& path);
ProblemInstance parse_problem(const std::string& json_text);

/// Serializations; every number is printed with 17 significant digits so
/// round-trips are exact and outputs are byte-stable.
std::string problem_to_json(const ProblemInstance& inst);
std::string extension_result_to_json(const ProblemInstance& inst, const ExtensionResult& r);
std::string oracle_result_to_json(const ProblemInstance& inst, const OracleResult& r,
                                  const OracleOptions& opt);

void write_file(const std::string& path, const std::string& content);

}  // namespace lipext
