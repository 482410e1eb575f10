#include "dynamap/types.hpp"

#include <cctype>

namespace dynamap {

namespace {

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

char to_lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

MacId::MacId(std::string_view raw) {
  std::string hex;
  hex.reserve(12);
  bool mac_like = !raw.empty();
  for (char c : raw) {
    if (c == ':' || c == '-') continue;
    if (!is_hex(c)) {
      mac_like = false;
      break;
    }
    hex += to_lower(c);
  }
  if (mac_like && hex.size() == 12) {
    id_.reserve(17);
    for (std::size_t i = 0; i < 12; i += 2) {
      if (i > 0) id_ += ':';
      id_ += hex[i];
      id_ += hex[i + 1];
    }
  } else {
    // Opaque key; lowercasing keeps equality case-insensitive and idempotent.
    id_.reserve(raw.size());
    for (char c : raw) id_ += to_lower(c);
  }
}

void Fingerprint::set(const MacId& mac, double rss_dbm) {
  if (rss_dbm < kSensitivityFloorDbm) rss_dbm = kSensitivityFloorDbm;
  readings_.insert_or_assign(mac, rss_dbm);
}

std::optional<double> Fingerprint::get(const MacId& mac) const {
  auto it = readings_.find(mac);
  if (it == readings_.end()) return std::nullopt;
  return it->second;
}

}  // namespace dynamap
