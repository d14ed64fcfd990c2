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


#ifndef IBRL_APP_MANIFEST_H_
#define IBRL_APP_MANIFEST_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ibrl {

inline constexpr char kToolVersion[] = "ibrl 1.0.0";

std::string Sha256Hex(const std::string& bytes);
std::string Sha256File(const std::string& path);

struct ManifestFile {
  std::string path;  // relative to the manifest's directory
  std::string sha256;
};

struct RunManifest {
  std::string command;
  std::string tool_version = kToolVersion;
  std::string started;   // UTC, ISO 8601
  std::string finished;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<uint64_t> seeds;
  std::vector<ManifestFile> files;
  // Free-form key/value notes, e.g. the best training instance.
  std::vector<std::pair<std::string, std::string>> notes;

  // Hashes `paths` and records them relative to `base_dir`.
  void AddFiles(const std::string& base_dir, const std::vector<std::string>& paths);
  std::string Note(const std::string& key) const;  // empty when absent
};

std::string UtcNow();

void WriteManifest(const std::string& path, const RunManifest& manifest);
RunManifest ReadManifest(const std::string& path);

// One message per missing file or hash mismatch; empty when intact.
std::vector<std::string> VerifyManifest(const RunManifest& manifest, const std::string& base_dir);

}  // namespace ibrl

#endif  // IBRL_APP_MANIFEST_H_
