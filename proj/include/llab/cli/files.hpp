#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "llab/bytes.hpp"

namespace llab::cli {

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Key material with enough context to rebuild its scheme.
///
///   "LLAB" || version (u8) || string(scheme name) || string(params) || string(scheme id)
///   || string(role) || blob(material) || SHA-256 of everything before
struct KeyFile {
  std::string scheme;
  std::string params;
  std::string scheme_id;
  std::string role;
  Bytes material;
  bool operator==(const KeyFile&) const = default;
};

constexpr std::uint8_t kKeyFileVersion = 1;

Bytes encode_keyfile(const KeyFile& k);
/// Throws IntegrityError on a bad magic, version, layout or digest.
KeyFile decode_keyfile(ByteView data);

/// Throws IoError.
Bytes read_file(const std::filesystem::path& p);
/// Writes to a sibling temporary file, flushes it, then renames it over `p`.
void write_file_atomic(const std::filesystem::path& p, ByteView data);

}  // namespace llab::cli
