#include "eiscong/modsym/cache.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include <openssl/evp.h>

namespace eiscong::modsym {

namespace fs = std::filesystem;
using nlohmann::json;

std::string content_hash(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string HeckeKey::digest() const {
  return content_hash("level=" + std::to_string(level) + ";sign=" + std::to_string(sign) + ";field=" + field +
                      ";op=" + op.to_string() + ";subspace=" + subspace_hash);
}

HeckeCache::HeckeCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const fs::path& target, const std::string& data) {
  std::ostringstream tag;
  tag << ".tmp." << std::this_thread::get_id();
  const fs::path tmp = target.string() + tag.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << data;
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace

std::optional<HeckeCache::Raw> HeckeCache::load_raw(const HeckeKey& key) const {
  const std::string d = key.digest();
  const fs::path manifest = dir_ / (d + ".json"), triplets = dir_ / (d + ".triplets");
  try {
    if (!fs::exists(manifest) || !fs::exists(triplets)) return std::nullopt;
    json j = json::parse(read_file(manifest));
    const std::string body = read_file(triplets);
    if (j.at("level").get<std::int64_t>() != key.level || j.at("sign").get<int>() != key.sign ||
        j.at("field").get<std::string>() != key.field || j.at("operator").get<std::string>() != key.op.to_string() ||
        j.at("subspace_hash").get<std::string>() != key.subspace_hash ||
        j.at("content_hash").get<std::string>() != content_hash(body))
      return std::nullopt;
    Raw raw{j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(), {}};
    std::istringstream in(body);
    std::size_t r, c;
    std::string v;
    while (in >> r >> c >> v) raw.entries.emplace_back(r, c, v);
    return raw;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void HeckeCache::store_raw(const HeckeKey& key, std::size_t rows, std::size_t cols, const std::string& body) const {
  const std::string d = key.digest();
  json j = {{"level", key.level},
            {"sign", key.sign},
            {"field", key.field},
            {"operator", key.op.to_string()},
            {"rows", rows},
            {"cols", cols},
            {"subspace_hash", key.subspace_hash},
            {"content_hash", content_hash(body)}};
  write_atomic(dir_ / (d + ".triplets"), body);
  write_atomic(dir_ / (d + ".json"), j.dump(2) + "\n");
}

template <arith::FieldPolicy F>
void SubspaceHecke<F>::prefetch(const std::vector<HeckeOp>& ops, unsigned threads) {
  if (threads <= 1 || ops.size() <= 1) {
    for (const auto& op : ops) get(op);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex fail_mu;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < ops.size();) {
        try {
          get(ops[i]);
        } catch (...) {
          std::lock_guard lock(fail_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

template class SubspaceHecke<arith::RationalField>;
template class SubspaceHecke<arith::PrimeField>;

}  // namespace eiscong::modsym
