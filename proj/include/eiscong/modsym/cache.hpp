#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "eiscong/arith/field.hpp"
#include "eiscong/arith/linalg.hpp"
#include "eiscong/modsym/manin.hpp"

namespace eiscong::modsym {

// Hex SHA-256 of a byte string.
std::string content_hash(const std::string& bytes);

// Identifies a restricted Hecke matrix: level, sign, coefficient field,
// operator, and a hash of the subspace basis.
struct HeckeKey {
  std::int64_t level;
  int sign;
  std::string field;
  HeckeOp op;
  std::string subspace_hash;
  std::string digest() const;
};

template <arith::FieldPolicy F>
std::string subspace_hash(const Subspace<F>& sub) {
  const F& f = sub.basis().field();
  std::string s = std::to_string(sub.basis().rows()) + "x" + std::to_string(sub.basis().cols()) + ":";
  for (std::size_t r = 0; r < sub.basis().rows(); ++r)
    for (std::size_t c = 0; c < sub.basis().cols(); ++c) s += f.to_string(sub.basis()(r, c)) + ",";
  return content_hash(s);
}

inline mpq_class parse_value(const arith::RationalField&, const std::string& s) { return mpq_class(s); }
inline std::uint64_t parse_value(const arith::PrimeField& f, const std::string& s) {
  const std::uint64_t v = std::stoull(s);
  if (v >= f.modulus()) throw Error("cache entry out of range");
  return v;
}

// On-disk store of Hecke matrices: "<digest>.triplets" holds "row col value"
// lines with decimal values, "<digest>.json" is the manifest. Writes go to a
// temporary file first and are renamed into place. Entries that fail any
// check are ignored.
class HeckeCache {
 public:
  explicit HeckeCache(std::filesystem::path dir);
  const std::filesystem::path& dir() const { return dir_; }

  template <arith::FieldPolicy F>
  std::optional<Matrix<F>> load(const HeckeKey& key, const F& field) const {
    auto raw = load_raw(key);
    if (!raw) return std::nullopt;
    try {
      Matrix<F> m(field, raw->rows, raw->cols);
      for (const auto& [r, c, v] : raw->entries) {
        if (r >= raw->rows || c >= raw->cols) return std::nullopt;
        m(r, c) = parse_value(field, v);
      }
      return m;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  template <arith::FieldPolicy F>
  void store(const HeckeKey& key, const Matrix<F>& m) const {
    std::string body;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m.field().is_zero(m(r, c)))
          body += std::to_string(r) + " " + std::to_string(c) + " " + m.field().to_string(m(r, c)) + "\n";
    store_raw(key, m.rows(), m.cols(), body);
  }

 private:
  struct Raw {
    std::size_t rows, cols;
    std::vector<std::tuple<std::size_t, std::size_t, std::string>> entries;
  };
  std::optional<Raw> load_raw(const HeckeKey& key) const;
  void store_raw(const HeckeKey& key, std::size_t rows, std::size_t cols, const std::string& body) const;

  std::filesystem::path dir_;
};

// Hecke matrices restricted to a fixed stable subspace, memoized in memory
// and optionally on disk.
template <arith::FieldPolicy F>
class SubspaceHecke {
 public:
  SubspaceHecke(const ManinSymbolSpace<F>& space, Subspace<F> sub, const HeckeCache* cache = nullptr)
      : space_(space), sub_(std::move(sub)), cache_(cache), hash_(subspace_hash(sub_)) {}

  const Subspace<F>& subspace() const { return sub_; }
  const ManinSymbolSpace<F>& space() const { return space_; }

  Matrix<F> get(const HeckeOp& op) {
    const std::string label = op.to_string();
    {
      std::lock_guard lock(mu_);
      auto it = memo_.find(label);
      if (it != memo_.end()) return it->second;
    }
    const HeckeKey key{space_.level(), space_.sign(), space_.field().name(), op, hash_};
    std::optional<Matrix<F>> m;
    if (cache_) m = cache_->load(key, space_.field());
    if (!m || m->rows() != sub_.dimension() || m->cols() != sub_.dimension()) {
      m = hecke(space_, op, sub_);
      if (cache_) cache_->store(key, *m);
    }
    std::lock_guard lock(mu_);
    return memo_.emplace(label, std::move(*m)).first->second;
  }

  // Compute several operators on up to `threads` worker threads.
  void prefetch(const std::vector<HeckeOp>& ops, unsigned threads);

 private:
  const ManinSymbolSpace<F>& space_;
  Subspace<F> sub_;
  const HeckeCache* cache_;
  std::string hash_;
  std::mutex mu_;
  std::map<std::string, Matrix<F>> memo_;
};

extern template class SubspaceHecke<arith::RationalField>;
extern template class SubspaceHecke<arith::PrimeField>;

}  // namespace eiscong::modsym
