// Copyright 2026 The ilps Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ILPS_SERIALIZE_HPP_
#define ILPS_SERIALIZE_HPP_

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ilps/errors.hpp"
#include "ilps/instance.hpp"

namespace ilps {

/// Document schema identifier for the canonical instance interchange format.
inline constexpr const char* kCanonicalSchema = "ilp-canonical/1";

using Json = nlohmann::ordered_json;

/// Serializes an instance as a canonical JSON document with the sparse matrix
/// in parallel (rows, cols, vals) arrays, row-major ordered. Serialization is
/// deterministic, so re-serializing a round-tripped instance is
/// byte-identical.
inline Json write_canonical(const IlpInstance& inst) {
  Json doc;
  doc["schema"] = kCanonicalSchema;
  doc["name"] = inst.name();
  doc["n"] = inst.num_vars();
  doc["m"] = inst.num_rows();
  doc["c"] = std::vector<double>(inst.objective().begin(), inst.objective().end());
  doc["b"] = std::vector<double>(inst.rhs().begin(), inst.rhs().end());
  std::vector<Triplet> triplets = inst.row_major_triplets();
  std::vector<int> rows, cols;
  std::vector<double> vals;
  rows.reserve(triplets.size());
  cols.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (const Triplet& t : triplets) {
    rows.push_back(t.row);
    cols.push_back(t.col);
    vals.push_back(t.value);
  }
  doc["rows"] = std::move(rows);
  doc["cols"] = std::move(cols);
  doc["vals"] = std::move(vals);
  doc["metadata"] = inst.metadata();
  return doc;
}

inline IlpInstance read_canonical(const Json& doc) {
  require(doc.is_object(), errc::validation_error, "document is not an object");
  require(doc.contains("schema") && doc["schema"].is_string(),
          errc::schema_version_mismatch, "missing schema identifier");
  require(doc["schema"].get<std::string>() == kCanonicalSchema,
          errc::schema_version_mismatch,
          "unsupported schema '" + doc["schema"].get<std::string>() + "'");
  for (const char* key : {"name", "n", "m", "c", "b", "rows", "cols", "vals"})
    require(doc.contains(key), errc::validation_error,
            std::string("missing field '") + key + "'");
  require(doc["rows"].is_array() && doc["cols"].is_array() && doc["vals"].is_array(),
          errc::validation_error, "triplet fields must be arrays");
  require(doc["rows"].size() == doc["cols"].size() &&
              doc["rows"].size() == doc["vals"].size(),
          errc::validation_error, "triplet arrays have inconsistent lengths");

  std::vector<Triplet> triplets(doc["rows"].size());
  try {
    for (std::size_t i = 0; i < triplets.size(); ++i)
      triplets[i] = {doc["rows"][i].get<int>(), doc["cols"][i].get<int>(),
                     doc["vals"][i].get<double>()};
    IlpInstance inst = IlpInstance::build(
        doc["n"].get<int>(), doc["m"].get<int>(),
        doc["c"].get<std::vector<double>>(), triplets,
        doc["b"].get<std::vector<double>>(), doc["name"].get<std::string>());
    if (doc.contains("metadata"))
      inst.metadata() =
          doc["metadata"].get<std::map<std::string, std::string>>();
    return inst;
  } catch (const Json::exception& e) {
    fail(errc::validation_error, std::string("malformed field: ") + e.what());
  }
}

inline std::string to_canonical_string(const IlpInstance& inst) {
  return write_canonical(inst).dump(2) + "\n";
}

inline IlpInstance read_canonical_string(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  require(!doc.is_discarded(), errc::parse_error, "invalid JSON document");
  return read_canonical(doc);
}

inline void write_canonical_file(const IlpInstance& inst,
                                 const std::string& path) {
  std::ofstream out(path);
  require(out.good(), errc::io_failure, "cannot open '" + path + "' for writing");
  out << to_canonical_string(inst);
  require(out.good(), errc::io_failure, "failed writing '" + path + "'");
}

inline IlpInstance read_canonical_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_failure, "cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return read_canonical_string(text);
}

}  // namespace ilps

#endif  // ILPS_SERIALIZE_HPP_
