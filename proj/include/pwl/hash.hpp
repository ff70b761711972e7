#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace pwl {

// FNV-1a, 64 bit, as 16 hex digits.
inline std::string content_hash(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace pwl
