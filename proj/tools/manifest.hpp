#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace erpclass::cli {

std::string sha256_file(const std::filesystem::path& path);

// Provenance record written as manifest.json next to every command's
// outputs. Timestamps honour SOURCE_DATE_EPOCH so reruns can be compared
// byte for byte.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> args);

  void set_seed(std::uint64_t seed) { json_["seed"] = seed; }
  void add_config(const std::string& key, nlohmann::ordered_json value) {
    json_["configs"][key] = std::move(value);
  }
  void add_input(const std::filesystem::path& path);

  // Writes `contents` to out_dir/name and records its digest.
  void write_output(const std::filesystem::path& out_dir, const std::string& name,
                    const std::string& contents);

  // Writes out_dir/manifest.json.
  void finish(const std::filesystem::path& out_dir);

  static constexpr const char* kFileName = "manifest.json";

 private:
  nlohmann::ordered_json json_;
};

}  // namespace erpclass::cli
