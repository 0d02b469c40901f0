#include "llab/cli/files.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>

#include <unistd.h>

#include "llab/sha256.hpp"

namespace llab::cli {

namespace {
constexpr std::string_view kMagic = "LLAB";
}

Bytes encode_keyfile(const KeyFile& k) {
  ByteWriter w;
  w.put_raw(to_bytes(kMagic)).put_u8(kKeyFileVersion);
  w.put_string(k.scheme).put_string(k.params).put_string(k.scheme_id).put_string(k.role).put_blob(k.material);
  const Digest d = sha256(w.bytes());
  w.put_raw(d);
  return w.take();
}

KeyFile decode_keyfile(ByteView data) {
  if (data.size() < kMagic.size() + 1 + 32) throw IntegrityError("key file is truncated");
  const ByteView body = data.first(data.size() - 32);
  const Digest d = sha256(body);
  if (!std::equal(d.begin(), d.end(), data.end() - 32)) throw IntegrityError("key file digest mismatch");
  KeyFile k;
  try {
    ByteReader r(body);
    if (r.raw(kMagic.size()) != to_bytes(kMagic)) throw IntegrityError("not a key file");
    if (r.u8() != kKeyFileVersion) throw IntegrityError("unsupported key file version");
    k.scheme = r.string();
    k.params = r.string();
    k.scheme_id = r.string();
    k.role = r.string();
    k.material = r.blob();
    r.expect_done();
  } catch (const DecodeError& e) {
    throw IntegrityError(std::string("malformed key file: ") + e.what());
  }
  return k;
}

Bytes read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_file_atomic(const std::filesystem::path& p, ByteView data) {
  const std::filesystem::path tmp = p.string() + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (f == nullptr) throw IoError("cannot write " + tmp.string());
  const bool ok = std::fwrite(data.data(), 1, data.size(), f) == data.size() && std::fflush(f) == 0 &&
                  ::fsync(fileno(f)) == 0;
  std::fclose(f);
  if (!ok) {
    std::filesystem::remove(tmp);
    throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) throw IoError("cannot replace " + p.string() + ": " + ec.message());
}

}  // namespace llab::cli
