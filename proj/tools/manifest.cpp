#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "erpclass/error.hpp"

namespace erpclass::cli {

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string to_hex(const unsigned char* data, unsigned int len) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kDigits[data[i] >> 4]);
    out.push_back(kDigits[data[i] & 0xF]);
  }
  return out;
}

std::string sha256_bytes(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr);
  return to_hex(md.data(), len);
}

std::string timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_bytes(ss.str());
}

RunManifest::RunManifest(std::string command, std::vector<std::string> args) {
  json_["tool"] = "erpclass";
  json_["version"] = kToolVersion;
  json_["command"] = std::move(command);
  json_["args"] = std::move(args);
  json_["started_at"] = timestamp();
  json_["seed"] = nullptr;
  json_["configs"] = nlohmann::ordered_json::object();
  json_["inputs"] = nlohmann::ordered_json::array();
  json_["outputs"] = nlohmann::ordered_json::array();
}

void RunManifest::add_input(const std::filesystem::path& path) {
  json_["inputs"].push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
}

void RunManifest::write_output(const std::filesystem::path& out_dir, const std::string& name,
                               const std::string& contents) {
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  out << contents;
  out.close();
  json_["outputs"].push_back({{"path", name}, {"sha256", sha256_bytes(contents)}});
}

void RunManifest::finish(const std::filesystem::path& out_dir) {
  json_["finished_at"] = timestamp();
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir / kFileName, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write manifest in '" + out_dir.string() + "'");
  out << json_.dump(2) << '\n';
}

}  // namespace erpclass::cli
