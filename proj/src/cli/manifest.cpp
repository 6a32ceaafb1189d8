#include "stdiff/cli/manifest.hpp"

#include <array>
#include <fstream>
#include <iterator>
#include <memory>

#include <openssl/evp.h>

#include "stdiff/error.hpp"

namespace stdiff::cli {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
    throw std::runtime_error("sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::invalid_config, "cannot read " + path.string());
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(data);
}

std::string run_id_for(const nlohmann::json& config) { return sha256_hex(config.dump()).substr(0, 16); }

nlohmann::json RunManifest::to_json() const {
  nlohmann::json files_json = nlohmann::json::array();
  for (const auto& f : files) files_json.push_back({{"path", f.path}, {"sha256", f.sha256}});
  return nlohmann::json{{"run_id", run_id},
                        {"tool_version", tool_version},
                        {"wall_clock_seconds", wall_clock_seconds},
                        {"files", files_json}};
}

RunManifest write_manifest(const std::filesystem::path& dir, const std::string& run_id,
                           const std::vector<std::string>& files, double wall_clock_seconds) {
  RunManifest m;
  m.run_id = run_id;
  m.wall_clock_seconds = wall_clock_seconds;
  for (const auto& f : files) m.files.push_back({f, sha256_file(dir / f)});
  std::ofstream out(dir / "manifest.json");
  out << m.to_json().dump(2) << '\n';
  return m;
}

}  // namespace stdiff::cli
