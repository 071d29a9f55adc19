#include "idlms/numeric.hpp"

#include <charconv>
#include <system_error>

namespace idlms {

void Fnv1a64::update(const void* data, std::size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    state_ ^= static_cast<std::uint64_t>(bytes[i]);
    state_ *= 0x100000001b3ULL;
  }
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
  Fnv1a64 hash;
  hash.update(data, n);
  return hash.digest();
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace idlms
