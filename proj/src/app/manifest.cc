// Copyright 2026 The ibrl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ibrl/app/manifest.h"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "ibrl/common/csv.h"
#include "ibrl/common/errors.h"
#include "json.hpp"

namespace ibrl {

using nlohmann::json;

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string Sha256File(const std::string& path) { return Sha256Hex(ReadTextFile(path)); }

void RunManifest::AddFiles(const std::string& base_dir, const std::vector<std::string>& paths) {
  for (const std::string& p : paths) {
    const std::string rel = std::filesystem::relative(p, base_dir).generic_string();
    files.push_back({rel, Sha256File(p)});
  }
}

std::string RunManifest::Note(const std::string& key) const {
  for (const auto& [k, v] : notes) {
    if (k == key) return v;
  }
  return "";
}

std::string UtcNow() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void WriteManifest(const std::string& path, const RunManifest& m) {
  json config = json::object();
  for (const auto& [k, v] : m.config) config[k] = v;
  json notes = json::object();
  for (const auto& [k, v] : m.notes) notes[k] = v;
  json files = json::array();
  for (const ManifestFile& f : m.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}});
  json j = {{"command", m.command},   {"tool_version", m.tool_version}, {"started", m.started},
            {"finished", m.finished}, {"config", config},               {"seeds", m.seeds},
            {"files", files},         {"notes", notes}};
  WriteTextFile(path, [&](std::ostream& out) { out << j.dump(1) << '\n'; });
}

RunManifest ReadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("missing manifest " + path);
  try {
    json j = json::parse(in);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.started = j.at("started").get<std::string>();
    m.finished = j.at("finished").get<std::string>();
    for (const auto& [k, v] : j.at("config").items()) m.config.emplace_back(k, v.get<std::string>());
    m.seeds = j.at("seeds").get<std::vector<uint64_t>>();
    for (const json& f : j.at("files")) {
      m.files.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>()});
    }
    for (const auto& [k, v] : j.at("notes").items()) m.notes.emplace_back(k, v.get<std::string>());
    return m;
  } catch (const json::exception& e) {
    throw IoError("malformed manifest " + path + ": " + e.what());
  }
}

std::vector<std::string> VerifyManifest(const RunManifest& manifest, const std::string& base_dir) {
  std::vector<std::string> problems;
  for (const ManifestFile& f : manifest.files) {
    const std::string p = (std::filesystem::path(base_dir) / f.path).string();
    if (!std::filesystem::exists(p)) {
      problems.push_back("missing file " + f.path);
      continue;
    }
    if (Sha256File(p) != f.sha256) problems.push_back("hash mismatch for " + f.path);
  }
  return problems;
}

}  // namespace ibrl
