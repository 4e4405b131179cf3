#include "hardyctl/zero_cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hardyctl/json_io.hpp"

namespace hardyctl {

namespace {

class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& p) {
    fd_ = ::open(p.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }

 private:
  int fd_ = -1;
};

nlohmann::json load_doc(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error&) {
    return nlohmann::json::object();  // corrupt cache degrades to a miss
  }
}

}  // namespace

ZeroCache::ZeroCache(std::filesystem::path dir)
    : dir_(std::move(dir)), file_(dir_ / "bessel_zeros.json"), lock_(dir_ / "bessel_zeros.lock") {
  std::filesystem::create_directories(dir_);
}

std::string ZeroCache::key(const BigFloat& nu, int K, int bits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", nu.to_double());
  return std::string(buf) + "|" + std::to_string(K) + "|" + std::to_string(bits);
}

std::optional<std::vector<BigFloat>> ZeroCache::lookup(const BigFloat& nu, int K, int bits) const {
  FileLock lock(lock_);
  nlohmann::json doc = load_doc(file_);
  auto it = doc.find(key(nu, K, bits));
  if (it == doc.end() || !it->is_array()) return std::nullopt;
  std::vector<BigFloat> zeros;
  zeros.reserve(it->size());
  for (const auto& s : *it) {
    if (!s.is_string()) return std::nullopt;
    zeros.push_back(BigFloat::from_string(s.get<std::string>(), bits));
  }
  return zeros;
}

void ZeroCache::store(const BigFloat& nu, int K, int bits, const std::vector<BigFloat>& zeros) {
  FileLock lock(lock_);
  nlohmann::json doc = load_doc(file_);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& z : zeros) arr.push_back(z.to_string());
  doc[key(nu, K, bits)] = std::move(arr);
  io::atomic_write(file_, doc.dump(1));
}

}  // namespace hardyctl
