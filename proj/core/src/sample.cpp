#include "ufg/sample.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "ufg/errors.hpp"

namespace ufg {
namespace {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001B3ull;
    }
  }
  void u64(std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(buf, sizeof buf);
  }
  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0xCBF29CE484222325ull;
};

}  // namespace

PosetSample::PosetSample(ItemUniverse universe,
                         std::span<const Poset> observations)
    : universe_(std::move(universe)) {
  std::vector<std::pair<Poset, std::uint64_t>> entries;
  entries.reserve(observations.size());
  for (const Poset& p : observations) entries.emplace_back(p, 1);
  build(std::move(entries));
}

PosetSample::PosetSample(ItemUniverse universe, std::span<const Poset> posets,
                         std::span<const std::uint64_t> counts)
    : universe_(std::move(universe)) {
  if (posets.size() != counts.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "poset and count lists differ in length");
  }
  std::vector<std::pair<Poset, std::uint64_t>> entries;
  entries.reserve(posets.size());
  for (std::size_t i = 0; i < posets.size(); ++i) {
    if (counts[i] == 0) {
      throw Error(ErrorCode::kInvalidArgument, "multiplicity must be >= 1");
    }
    entries.emplace_back(posets[i], counts[i]);
  }
  build(std::move(entries));
}

void PosetSample::build(std::vector<std::pair<Poset, std::uint64_t>> entries) {
  if (entries.empty()) {
    throw Error(ErrorCode::kEmptyInput, "a sample needs at least one poset");
  }
  for (const auto& [p, c] : entries) {
    if (p.size() != universe_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "poset over " + std::to_string(p.size()) +
                      " items in a sample over " +
                      std::to_string(universe_.size()));
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [p, c] : entries) {
    if (!unique_.empty() && unique_.back() == p) {
      counts_.back() += c;
    } else {
      unique_.push_back(p);
      counts_.push_back(c);
    }
    n_ += c;
  }
}

Rational PosetSample::probability(std::size_t unique_index) const {
  return Rational(BigInt(counts_.at(unique_index)), BigInt(n_));
}

std::vector<Rational> PosetSample::probabilities() const {
  std::vector<Rational> out;
  out.reserve(unique_.size());
  for (std::size_t i = 0; i < unique_.size(); ++i) out.push_back(probability(i));
  return out;
}

std::optional<std::size_t> PosetSample::find(const Poset& p) const {
  auto it = std::lower_bound(unique_.begin(), unique_.end(), p);
  if (it == unique_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - unique_.begin());
}

std::vector<Poset> PosetSample::expanded() const {
  std::vector<Poset> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < unique_.size(); ++i) {
    out.insert(out.end(), static_cast<std::size_t>(counts_[i]), unique_[i]);
  }
  return out;
}

std::string PosetSample::content_hash() const {
  Fnv1a h;
  h.u64(static_cast<std::uint64_t>(universe_.size()));
  for (const std::string& label : universe_.labels()) {
    h.u64(label.size());
    h.bytes(label.data(), label.size());
  }
  for (std::size_t i = 0; i < unique_.size(); ++i) {
    for (std::uint64_t w : unique_[i].pairs().words()) h.u64(w);
    h.u64(counts_[i]);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h.value()));
  return buf;
}

}  // namespace ufg
